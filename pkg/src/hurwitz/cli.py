"""Command-line front end.

Every subcommand prints one JSON document.  Exit status: 0 on success, 2 on
bad arguments, 1 when a checked identity fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction

from .cache import ResultCache, ResultRecord, cache_key
from .combinatorics import Profile, orderings_of
from .exactmath import format_fraction
from .polynomiality import (
    FitFailureError,
    InsufficientSamplesError,
    OnWallError,
    chamber_signature,
    fit_chamber_polynomial,
    sample_chamber,
    wall_crossing_direct,
    wall_crossing_formula,
)
from .recursion import CUT_TYPES, mixed_recursion_rhs, printed_recursion_rhs, recursion_rhs
from .symgroup import FactorizationQuery, ResourceLimitError, count_factorizations
from .tropical import enumerate_covers, export_cover, h_slice, h_total, mixed_slice, mixed_total, vec_h
from .verification import SUITES, run_suite

VARIANTS = ("plain", "monotone", "strict", "mixed")


class ArgumentProblem(ValueError):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(p: argparse.ArgumentParser, lam=False, variant=True):
    p.add_argument("--g", type=int, required=True, help="genus")
    p.add_argument("--x", type=_int_list, required=True, help="profile, e.g. 2,1,-2,-1")
    if lam:
        p.add_argument("--lambda", dest="lam", type=_int_list, help="comma-separated parts")
    if variant:
        p.add_argument("--variant", choices=VARIANTS, default="monotone")
        p.add_argument("--p", type=int, default=0, help="strictly monotone steps (mixed)")
        p.add_argument("--q", type=int, default=0, help="weakly monotone steps (mixed)")
    conn = p.add_mutually_exclusive_group()
    conn.add_argument("--connected", dest="connected", action="store_true", default=True)
    conn.add_argument("--disconnected", dest="connected", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hurwitz", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--cache-dir", default=None, help="JSON-lines cache directory (default: $HURWITZ_CACHE_DIR)")
    # also accepted after the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--cache-dir", default=argparse.SUPPRESS, help="JSON-lines cache directory (default: $HURWITZ_CACHE_DIR)")
    sub = ap.add_subparsers(dest="command", required=True)

    def _sub(name, **kw):
        return sub.add_parser(name, parents=[shared], **kw)


    p = _sub("oracle", help="brute-force count in S_d")
    _common(p)
    p.add_argument("--degree-limit", type=int, default=7)

    p = _sub("tropical", help="count by tropical covers")
    _common(p)

    p = _sub("total", help="(strictly) monotone double Hurwitz number")
    _common(p)

    p = _sub("slice", help="lambda-slice")
    _common(p, lam=True)
    p.add_argument("--ordered", action="store_true", help="treat --lambda as ordered (single ordering)")
    p.add_argument("--labeled-ends", action="store_true", help="do not divide by end symmetries")
    p.add_argument("--export-covers", metavar="FILE", help="write the contributing covers as text")

    p = _sub("mixed", help="mixed number or mixed slice")
    _common(p, variant=False)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--strict-block", type=_int_list, default=None, help="ordered strictly monotone block")
    p.add_argument("--weak-block", type=_int_list, default=None, help="ordered weakly monotone block")

    p = _sub("fit", help="fit the chamber polynomial of a slice")
    _common(p, lam=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=None)

    p = _sub("wallcross", help="check wall crossing at a point with x_I > 0")
    _common(p, lam=True)
    p.add_argument("--wall", type=_int_list, required=True, help="1-based subset I")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--allow-negative-genus", action="store_true", help="let the middle factor have negative genus")

    p = _sub("recursion", help="compare a slice with its cut-and-join expansion")
    _common(p, lam=True)
    p.add_argument("--reading", choices=("corrected", "printed"), default="corrected")
    p.add_argument("--cut", choices=CUT_TYPES, default=None, help="mixed: block to cut along")
    p.add_argument("--strict-block", type=_int_list, default=())
    p.add_argument("--weak-block", type=_int_list, default=())

    p = _sub("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--golden", default=None, help="golden CSV (default: bundled)")
    return ap


# --------------------------------------------------------------------------


def _profile(args) -> Profile:
    try:
        return Profile(args.x)
    except ValueError as exc:
        raise ArgumentProblem(str(exc))


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _cached_value(args, cache: ResultCache, kind, lam, ordered, variant, engine, compute, p=None, q=None) -> dict:
    x = _profile(args)
    key = cache_key(kind, args.g, x.entries, lam, ordered, variant, args.connected, engine, p, q)
    hit = cache.lookup(key)
    if hit is not None:
        return hit.to_json()
    t0 = time.perf_counter()
    value = compute(x)
    rec = ResultRecord(
        kind=kind,
        g=args.g,
        x=x.entries,
        lam=lam,
        lambda_ordered=ordered,
        variant=variant,
        connected=args.connected,
        value=format_fraction(value),
        engine=engine,
        timing=round(time.perf_counter() - t0, 6),
        p=p,
        q=q,
    )
    cache.store(rec)
    return rec.to_json()


def _pq(args):
    return (args.p, args.q) if args.variant == "mixed" else (None, None)


def cmd_oracle(args, cache) -> int:
    p, q = _pq(args)

    def compute(x):
        return count_factorizations(FactorizationQuery(args.g, x, args.variant, args.connected, args.p, args.q), args.degree_limit)

    _emit(_cached_value(args, cache, "total", None, False, args.variant, "oracle", compute, p, q))
    return 0


def _tropical_total(args, x) -> Fraction:
    if args.variant == "plain":
        return mixed_total(args.g, x, 0, 0, args.connected)
    if args.variant == "mixed":
        if args.p < 0 or args.q < 0 or args.p + args.q > x.b(args.g):
            raise ArgumentProblem("mixed needs p, q >= 0 with p + q <= 2g-2+n")
        return mixed_total(args.g, x, args.p, args.q, args.connected)
    return h_total(args.g, x, args.variant, args.connected)


def cmd_tropical(args, cache) -> int:
    p, q = _pq(args)
    _emit(_cached_value(args, cache, "total", None, False, args.variant, "tropical", lambda x: _tropical_total(args, x), p, q))
    return 0


cmd_total = cmd_tropical


def cmd_slice(args, cache) -> int:
    if args.lam is None:
        raise ArgumentProblem("slice needs --lambda")
    if args.variant not in ("monotone", "strict"):
        raise ArgumentProblem("slice takes --variant monotone or strict; use the mixed subcommand for mixed slices")
    lam = args.lam

    def compute(x):
        fn = vec_h if args.ordered else h_slice
        return fn(args.g, x, lam, args.variant, args.connected, args.labeled_ends)

    kind = "slice-labeled" if args.labeled_ends else "slice"
    doc = _cached_value(args, cache, kind, lam, args.ordered, args.variant, "tropical", compute)
    if args.export_covers:
        x = _profile(args)
        lams = [lam] if args.ordered else orderings_of(sorted(lam, reverse=True))
        n = 0
        with open(args.export_covers, "w") as fh:
            for ordered_lam in lams:
                for c in enumerate_covers(x.entries, ordered_lam, args.connected):
                    fh.write(export_cover(c) + "\n")
                    n += 1
        doc = dict(doc, covers_exported=n, covers_file=args.export_covers)
    _emit(doc)
    return 0


def cmd_mixed(args, cache) -> int:
    x = _profile(args)
    if args.strict_block is not None or args.weak_block is not None:
        l1, l2 = args.strict_block or (), args.weak_block or ()
        lam = tuple(l1) + tuple(l2)

        def compute(x):
            return mixed_slice(args.g, x, l1, l2, args.connected)

        doc = _cached_value(args, cache, "mixed-slice", lam, True, "mixed", "tropical", compute, sum(l1), sum(l2))
        doc["strict_block"], doc["weak_block"] = list(l1), list(l2)
        _emit(doc)
        return 0
    p, q = args.p or 0, args.q or 0
    if p < 0 or q < 0 or p + q > x.b(args.g):
        raise ArgumentProblem("mixed needs p, q >= 0 with p + q <= 2g-2+n")
    _emit(_cached_value(args, cache, "total", None, False, "mixed", "tropical", lambda x: mixed_total(args.g, x, p, q, args.connected), p, q))
    return 0


def cmd_fit(args, cache) -> int:
    x = _profile(args)
    if args.lam is None:
        raise ArgumentProblem("fit needs --lambda")
    if args.variant not in ("monotone", "strict"):
        raise ArgumentProblem("fit takes --variant monotone or strict")
    sig = chamber_signature(x.entries)
    try:
        res = fit_chamber_polynomial(args.g, args.lam, sig, args.variant, args.connected, args.box, args.seed)
    except (FitFailureError, InsufficientSamplesError) as exc:
        _emit({"kind": "fit", "ok": False, "error": f"{type(exc).__name__}: {exc}", "seed": args.seed})
        return 1
    _emit(dict(res.to_json(), kind="fit", ok=True, x=list(x.entries)))
    return 0


def cmd_wallcross(args, cache) -> int:
    x = _profile(args)
    if args.lam is None:
        raise ArgumentProblem("wallcross needs --lambda")
    wall = tuple(i - 1 for i in args.wall)
    if any(i < 0 or i >= x.n for i in wall) or not wall or len(wall) >= x.n:
        raise ArgumentProblem("--wall must be a proper nonempty subset of 1..n")
    if sum(x.entries[i] for i in wall) <= 0:
        raise ArgumentProblem("--x must satisfy x_I > 0")
    try:
        wc = wall_crossing_direct(args.g, args.lam, wall, x.entries, args.variant, seed=args.seed)
    except (FitFailureError, InsufficientSamplesError) as exc:
        _emit({"kind": "wallcross", "ok": False, "error": f"{type(exc).__name__}: {exc}"})
        return 1
    diff = wc.difference
    sig = chamber_signature(x.entries)
    if x.n == 2:
        pts = [(a, -a) if x.entries[0] > 0 else (-a, a) for a in range(1, args.samples + 1)]
    else:
        pts = [x.entries] + [p for p in sample_chamber(sig, args.samples, 12, args.seed + 17) if p != x.entries][: args.samples - 1]
    rows, ok = [], True
    for pt in pts:
        direct = diff(pt)
        formula = wall_crossing_formula(args.g, pt, wall, args.lam, args.variant, args.allow_negative_genus)
        ok &= direct == formula
        rows.append({"x": list(pt), "direct": format_fraction(direct), "formula": format_fraction(formula)})
    _emit(
        {
            "kind": "wallcross",
            "ok": ok,
            "g": args.g,
            "wall": list(args.wall),
            "lambda": sorted(args.lam, reverse=True),
            "seed": args.seed,
            "difference": diff.to_json(),
            "points": rows,
        }
    )
    return 0 if ok else 1


def cmd_recursion(args, cache) -> int:
    x = _profile(args)
    if args.variant == "mixed" or args.cut is not None:
        if args.cut is None:
            raise ArgumentProblem("mixed recursion needs --cut")
        l1, l2 = tuple(args.strict_block), tuple(args.weak_block)
        lhs = mixed_slice(args.g, x, l1, l2, True)
        rhs = mixed_recursion_rhs(args.g, x, l1, l2, args.cut)
        doc = {"kind": "mixed-recursion", "cut": args.cut, "strict_block": list(l1), "weak_block": list(l2)}
    else:
        if args.lam is None:
            raise ArgumentProblem("recursion needs --lambda (ordered)")
        if args.variant not in ("monotone", "strict"):
            raise ArgumentProblem("recursion takes --variant monotone, strict or mixed")
        lhs = vec_h(args.g, x, args.lam, args.variant)
        fn = recursion_rhs if args.reading == "corrected" else printed_recursion_rhs
        rhs = fn(args.g, x, args.lam, args.variant)
        doc = {"kind": "recursion", "reading": args.reading, "lambda": list(args.lam), "variant": args.variant}
    ok = lhs == rhs
    doc.update(g=args.g, x=list(x.entries), lhs=format_fraction(lhs), rhs=format_fraction(rhs), ok=ok)
    _emit(doc)
    return 0 if ok else 1


def cmd_verify(args, cache) -> int:
    names = [n for n in SUITES if n != "recursion-printed"] if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        res = run_suite(name, dmax=args.dmax, seed=args.seed, golden=args.golden)
        results.append(res.to_json())
        if not res.passed:
            print(f"verification failed: {json.dumps(res.failure, sort_keys=True)}", file=sys.stderr)
            break
    doc = results[0] if len(results) == 1 else {"suite": "all", "passed": all(r["passed"] for r in results), "suites": results}
    _emit(doc)
    return 0 if all(r["passed"] for r in results) else 1


COMMANDS = {
    "oracle": cmd_oracle,
    "tropical": cmd_tropical,
    "total": cmd_total,
    "slice": cmd_slice,
    "mixed": cmd_mixed,
    "fit": cmd_fit,
    "wallcross": cmd_wallcross,
    "recursion": cmd_recursion,
    "verify": cmd_verify,
}


LIST_FLAGS = ("--x", "--lambda", "--wall", "--strict-block", "--weak-block")


def _glue_negative_lists(argv: list[str]) -> list[str]:
    # argparse reads "--x -1,1" as two options; turn it into "--x=-1,1"
    out: list[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_lists(argv))
    cache = ResultCache.from_env(args.cache_dir)
    try:
        return COMMANDS[args.command](args, cache)
    except (ArgumentProblem, OnWallError, ResourceLimitError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
