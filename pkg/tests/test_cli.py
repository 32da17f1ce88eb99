import json
import os
import subprocess
import sys

import pytest

from hurwitz.cache import ResultCache, ResultRecord, cache_key
from hurwitz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_total_example(capsys):
    code, doc, _ = run(capsys, "total", "--g", "0", "--x", "2,1,-2,-1", "--variant", "monotone", "--connected")
    assert code == 0 and doc["value"] == "3"
    assert doc["engine"] == "tropical"


def test_slice_example(capsys):
    code, doc, _ = run(capsys, "slice", "--g", "0", "--x", "2,1,-2,-1", "--lambda", "2", "--variant", "strict", "--connected")
    assert code == 0 and doc["value"] == "-1"


def test_oracle_and_tropical_agree(capsys):
    args = ["--g", "1", "--x", "2,-2", "--variant", "monotone", "--disconnected"]
    _, a, _ = run(capsys, "oracle", *args)
    _, b, _ = run(capsys, "tropical", *args)
    assert a["value"] == b["value"] == "1/2"
    assert a["engine"] == "oracle"


def test_plain_and_mixed(capsys):
    _, doc, _ = run(capsys, "tropical", "--g", "0", "--x", "2,1,-2,-1", "--variant", "plain")
    assert doc["value"] == "4"
    _, doc, _ = run(capsys, "oracle", "--g", "0", "--x", "2,1,-2,-1", "--variant", "mixed", "--p", "1", "--q", "1")
    _, doc2, _ = run(capsys, "mixed", "--g", "0", "--x", "2,1,-2,-1", "--p", "1", "--q", "1")
    assert doc["value"] == doc2["value"]
    _, doc3, _ = run(capsys, "mixed", "--g", "0", "--x", "2,1,-2,-1", "--strict-block", "2")
    assert doc3["value"] == "-1"


def test_argument_errors_exit_2(capsys):
    code, _, err = run(capsys, "total", "--g", "0", "--x", "2,1,-2")
    assert code == 2 and "usage" in err
    with pytest.raises(SystemExit) as exc:
        main(["total", "--g", "0", "--x", "1,-1", "--bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err
    code, _, _ = run(capsys, "slice", "--g", "0", "--x", "2,1,-2,-1", "--lambda", "1")
    assert code == 2


def test_verify_oracle_vs_tropical(capsys):
    code, doc, _ = run(capsys, "verify", "--suite", "oracle-vs-tropical", "--dmax", "4")
    assert code == 0 and doc["passed"]


def test_verify_failure_exit_1(capsys, tmp_path):
    bad = tmp_path / "golden.csv"
    bad.write_text('g,x,lambda,variant,connected,value\n0,"2,1,-2,-1",,monotone,true,4\n')
    code, doc, err = run(capsys, "verify", "--suite", "golden", "--golden", str(bad))
    assert code == 1 and not doc["passed"]
    assert doc["failure"]["expected"] == "4" and doc["failure"]["got"] == "3"
    assert "verification failed" in err


def test_verify_bundled_golden(capsys):
    code, doc, _ = run(capsys, "verify", "--suite", "golden")
    assert code == 0 and doc["checked"] >= 8


def test_recursion_command(capsys):
    code, doc, _ = run(capsys, "recursion", "--g", "0", "--x", "2,1,-2,-1", "--lambda", "1,1")
    assert code == 0 and doc["lhs"] == doc["rhs"] == "2"
    code, doc, _ = run(capsys, "recursion", "--g", "0", "--x", "2,-1,-1", "--lambda", "1", "--reading", "printed")
    assert code == 1 and doc["lhs"] == "1/2" and doc["rhs"] == "0"
    code, doc, _ = run(capsys, "recursion", "--g", "0", "--x", "2,1,-2,-1", "--variant", "mixed", "--cut", "usual_vertex")
    assert code == 0 and doc["lhs"] == "4"


def test_fit_command(capsys):
    code, doc, _ = run(capsys, "fit", "--g", "0", "--x", "3,1,-2,-2", "--lambda", "1,1", "--seed", "3")
    assert code == 0
    assert doc["polynomial"] == [{"exponents": [1, 0, 0], "coefficient": "1"}]
    assert doc["seed"] == 3 and doc["samples"]
    code, doc, _ = run(capsys, "fit", "--g", "0", "--x", "3,-3", "--lambda", "")
    assert code == 1 and not doc["ok"]


def test_fit_on_wall_is_argument_error(capsys):
    code, _, err = run(capsys, "fit", "--g", "0", "--x", "1,2,-1,-2", "--lambda", "1,1")
    assert code == 2 and "wall" in err


def test_wallcross_command(capsys):
    code, doc, _ = run(capsys, "wallcross", "--g", "0", "--x", "3,-1,2,-4", "--wall", "1,2", "--lambda", "1,1")
    assert code == 0 and doc["ok"] and len(doc["points"]) == 10
    assert all(p["direct"] == p["formula"] for p in doc["points"])


def test_export_covers(capsys, tmp_path):
    path = tmp_path / "covers.txt"
    code, doc, _ = run(capsys, "slice", "--g", "0", "--x", "2,1,-2,-1", "--lambda", "1,1", "--export-covers", str(path))
    assert code == 0 and doc["covers_exported"] > 0
    assert path.read_text().count("# profile") == doc["covers_exported"]


def test_determinism_byte_identical(capsys):
    args = ["fit", "--g", "1", "--x", "3,-1,-2", "--lambda", "2,1", "--seed", "9"]
    main(args)
    a = capsys.readouterr().out
    main(args)
    b = capsys.readouterr().out
    assert a == b


# --------------------------------------------------------------------------
# cache


def record(**kw):
    base = dict(kind="total", g=0, x=(2, 1, -2, -1), lam=None, lambda_ordered=False, variant="monotone",
                connected=True, value="3", engine="tropical", timing=0.01)
    base.update(kw)
    return ResultRecord(**base)


def test_cache_round_trip(tmp_path):
    c = ResultCache(tmp_path)
    r = record()
    assert c.lookup(r.key()) is None
    assert c.store(r)
    assert ResultCache(tmp_path).lookup(r.key()) == r


def test_cache_disabled():
    c = ResultCache(None)
    assert not c.store(record())
    assert c.lookup(record().key()) is None


def test_cache_key_canonical():
    a = cache_key("total", 0, (1, 2, -1, -2), None, False, "monotone", True, "oracle")
    b = cache_key("total", 0, (2, 1, -2, -1), None, False, "monotone", True, "oracle")
    assert a == b
    ordered = lambda lam: cache_key("slice", 0, (2, 1, -2, -1), lam, True, "monotone", True, "tropical")
    assert ordered((2, 1)) != ordered((1, 2))
    assert cache_key("total", 0, (2, -2), None, False, "monotone", True, "oracle") != cache_key(
        "total", 0, (2, -2), None, False, "monotone", False, "oracle"
    )


def test_cache_skips_corrupt_lines(tmp_path, caplog):
    c = ResultCache(tmp_path)
    c.store(record())
    with open(c.path, "a") as fh:
        fh.write("{not json\n")
        fh.write('{"kind": "total"}\n')
    fresh = ResultCache(tmp_path)
    with caplog.at_level("WARNING"):
        assert fresh.lookup(record().key()) == record()
    assert sum("corrupt" in m for m in caplog.messages) == 2


def test_record_value_must_parse():
    with pytest.raises(ValueError):
        record(value="three")


@pytest.mark.skipif(hasattr(os, "geteuid") and os.geteuid() == 0, reason="root ignores directory permissions")
def test_unwritable_cache_dir_warns(tmp_path, caplog):
    d = tmp_path / "ro"
    d.mkdir()
    d.chmod(0o500)
    with caplog.at_level("WARNING"):
        assert not ResultCache(d).store(record())
    assert "not writable" in caplog.text


def test_cache_dir_is_a_file_warns(tmp_path, caplog, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with caplog.at_level("WARNING"):
        code = main(["total", "--g", "0", "--x", "2,1,-2,-1", "--cache-dir", str(blocker / "sub")])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["value"] == "3"
    assert "not writable" in caplog.text


def test_cli_uses_cache_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HURWITZ_CACHE_DIR", str(tmp_path))
    main(["total", "--g", "0", "--x", "2,1,-2,-1"])
    first = json.loads(capsys.readouterr().out)
    main(["total", "--g", "0", "--x", "-1,1,-2,2"])
    second = json.loads(capsys.readouterr().out)
    assert second == first  # served from the cache, timing included
    assert (tmp_path / "results.jsonl").read_text().count("\n") == 1


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hurwitz.cli", "total", "--g", "0", "--x", "2,1,-2,-1", "--variant", "strict"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["value"] == "1"
