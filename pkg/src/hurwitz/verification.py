"""Verification suites shared by the command line and the test-suite.

Each suite returns a :class:`SuiteResult`; it stops at the first failing
comparison and records the offending query verbatim.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterator

from .combinatorics import Profile, ordered_partitions, partitions_bounded, unordered_partitions
from .exactmath import (
    format_fraction,
    one_point_bernoulli,
    one_point_coefficient,
    parse_fraction,
    s_series,
    series_invert,
    inverse_zeta_series,
)
from .polynomiality import (
    chamber_signature,
    fit_chamber_polynomial,
    sample_chamber,
    wall_crossing_direct,
    wall_crossing_formula,
)
from .recursion import CUT_TYPES, mixed_recursion_rhs, printed_recursion_rhs, recursion_rhs
from .symgroup import FactorizationQuery, count_factorizations
from .tropical import h_total, mixed_slice, vec_h

__all__ = ["SuiteResult", "SUITES", "run_suite", "profiles_up_to", "read_golden", "GOLDEN_HEADER"]

GOLDEN_HEADER = ["g", "x", "lambda", "variant", "connected", "value"]


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failure: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_json(self) -> dict:
        out = {"suite": self.suite, "passed": self.passed, "checked": self.checked}
        if self.failure is not None:
            out["failure"] = self.failure
        if self.notes:
            out["notes"] = self.notes
        return out


def profiles_up_to(dmax: int, nmax: int = 4) -> Iterator[Profile]:
    """Canonical profiles (x+ then x-, both descending) of degree <= dmax with n <= nmax."""
    for d in range(1, dmax + 1):
        for mu in partitions_bounded(d):
            for nu in partitions_bounded(d):
                if len(mu) + len(nu) <= nmax:
                    yield Profile.from_parts(mu, nu)


def _compare(res: SuiteResult, query: dict, expected: Fraction, got: Fraction) -> bool:
    res.checked += 1
    if expected == got:
        return True
    res.failure = dict(query, expected=format_fraction(expected), got=format_fraction(got))
    return False


def suite_oracle_vs_tropical(dmax: int = 4, gmax: int = 2, **_) -> SuiteResult:
    res = SuiteResult("oracle-vs-tropical")
    for g in range(gmax + 1):
        for x in profiles_up_to(dmax):
            if x.b(g) < 0:
                continue
            for variant in ("monotone", "strict"):
                for connected in (True, False):
                    q = {"g": g, "x": str(x), "variant": variant, "connected": connected}
                    oracle = count_factorizations(FactorizationQuery(g, x, variant, connected))
                    if not _compare(res, q, oracle, h_total(g, x, variant, connected)):
                        return res
    return res


def _golden_path():
    return resources.files("hurwitz").joinpath("data/golden.csv")


def read_golden(path=None) -> list[dict]:
    if path is None:
        text = _golden_path().read_text()
    else:
        with open(path, newline="") as fh:
            text = fh.read()
    rows = list(csv.DictReader(text.splitlines()))
    if rows and list(rows[0].keys()) != GOLDEN_HEADER:
        raise ValueError(f"golden file header must be {','.join(GOLDEN_HEADER)}")
    return rows


def golden_value(row: dict) -> Fraction:
    """Recompute one golden row with the tropical engine."""
    g = int(row["g"])
    x = Profile.parse(row["x"])
    connected = row["connected"].strip().lower() in ("1", "true", "yes")
    variant = row["variant"].strip()
    lam = row["lambda"].strip()
    if variant == "plain":
        return mixed_slice(g, x, (), (), connected) if not lam else _bad_row(row)
    if not lam:
        return h_total(g, x, variant, connected)
    return vec_h(g, x, tuple(int(t) for t in lam.split(",")), variant, connected)


def _bad_row(row):
    raise ValueError(f"plain golden rows take no lambda: {row}")


def suite_golden(golden: str | None = None, **_) -> SuiteResult:
    res = SuiteResult("golden")
    for row in read_golden(golden):
        if not _compare(res, dict(row), parse_fraction(row["value"]), golden_value(row)):
            return res
    return res


def suite_series(**_) -> SuiteResult:
    res = SuiteResult("series")
    s = s_series(4)
    inv = series_invert(s)
    checks = [
        ("S[z^0]", Fraction(1), s.coefficient(0)),
        ("S[z^2]", Fraction(1, 24), s.coefficient(2)),
        ("S[z^4]", Fraction(1, 1920), s.coefficient(4)),
        ("1/S[z^0]", Fraction(1), inv.coefficient(0)),
        ("1/S[z^2]", Fraction(-1, 24), inv.coefficient(2)),
        ("1/S[z^4]", Fraction(7, 5760), inv.coefficient(4)),
    ]
    for l in range(1, 9):
        series_value = inverse_zeta_series(2 * l - 1).coefficient(2 * l - 1)
        checks.append((f"c({l}) series vs Bernoulli", one_point_bernoulli(l), series_value))
        checks.append((f"c({l}) public", series_value, one_point_coefficient(l)))
    for name, expected, got in checks:
        if not _compare(res, {"quantity": name}, expected, got):
            return res
    return res


def suite_recursion(dmax: int = 4, gmax: int = 1, reading: str = "corrected", **_) -> SuiteResult:
    res = SuiteResult("recursion" if reading == "corrected" else "recursion-printed")
    rhs_fn: Callable = recursion_rhs if reading == "corrected" else printed_recursion_rhs
    for g in range(gmax + 1):
        for x in profiles_up_to(dmax):
            b = x.b(g)
            if b <= 0:
                continue
            for lam in ordered_partitions(b):
                for variant in ("monotone", "strict"):
                    q = {"g": g, "x": str(x), "lambda": list(lam), "variant": variant, "reading": reading}
                    if not _compare(res, q, vec_h(g, x, lam, variant), rhs_fn(g, x, lam, variant)):
                        return res
    return res


def _blocks(p: int) -> list[tuple[int, ...]]:
    return ordered_partitions(p) if p else [()]


def suite_mixed(dmax: int = 4, gmax: int = 1, **_) -> SuiteResult:
    res = SuiteResult("mixed")
    for g in range(gmax + 1):
        for x in profiles_up_to(dmax):
            b = x.b(g)
            if b < 0:
                continue
            base = {"g": g, "x": str(x)}
            # specialisations
            lams = ordered_partitions(b) if b else [()]
            for lam in lams:
                if not _compare(res, dict(base, check="p=b", lam=list(lam)), vec_h(g, x, lam, "strict"), mixed_slice(g, x, lam, ())):
                    return res
                if not _compare(res, dict(base, check="q=b", lam=list(lam)), vec_h(g, x, lam, "monotone"), mixed_slice(g, x, (), lam)):
                    return res
            plain = count_factorizations(FactorizationQuery(g, x, "plain", True))
            if not _compare(res, dict(base, check="p=q=0 vs plain oracle"), plain, mixed_slice(g, x, (), ())):
                return res
            # cutting recursions
            if b == 0:
                continue
            for p in range(b + 1):
                for qq in range(b - p + 1):
                    for l1 in _blocks(p):
                        for l2 in _blocks(qq):
                            lhs = mixed_slice(g, x, l1, l2)
                            for cut in CUT_TYPES:
                                try:
                                    rhs = mixed_recursion_rhs(g, x, l1, l2, cut)
                                except ValueError:
                                    continue
                                q = dict(base, check=cut, lambda1=list(l1), lambda2=list(l2))
                                if not _compare(res, q, lhs, rhs):
                                    return res
    return res


FIT_CHAMBERS = {
    (0, 3): [(3, -1, -2), (1, 2, -3)],
    (0, 4): [(3, 1, -2, -2), (4, -1, 2, -5)],
    (1, 3): [(3, -1, -2), (1, 2, -3)],
    (1, 4): [(5, 1, -2, -4), (4, -1, 2, -5)],
}


def suite_polynomiality(seed: int = 0, **_) -> SuiteResult:
    res = SuiteResult("polynomiality")
    for (g, n), reps in FIT_CHAMBERS.items():
        bound = 4 * g - 3 + n
        for rep in reps:
            sig = chamber_signature(rep)
            for lam in unordered_partitions(2 * g - 2 + n):
                for variant in ("monotone", "strict"):
                    q = {"g": g, "chamber_of": list(rep), "lambda": list(lam), "variant": variant}
                    res.checked += 1
                    try:
                        fit = fit_chamber_polynomial(g, lam, sig, variant, seed=seed)
                    except Exception as exc:  # fit failures are reported, not raised
                        res.failure = dict(q, error=f"{type(exc).__name__}: {exc}")
                        return res
                    if fit.polynomial.degree > bound:
                        res.failure = dict(q, error=f"degree {fit.polynomial.degree} exceeds {bound}")
                        return res
                    if 4 * len(fit.heldout_samples) < fit.monomials:
                        res.failure = dict(q, error="too few held-out samples")
                        return res
    return res


WALLS = [
    # (g, wall, point with x_I > 0, allow negative middle genus)
    (0, (0, 1), (3, -1, 2, -4), False),
    (1, (0,), (3, -3), True),
]


def suite_wallcross(seed: int = 0, points: int = 10, **_) -> SuiteResult:
    res = SuiteResult("wallcross")
    for g, wall, rep, neg in WALLS:
        n = len(rep)
        sig = chamber_signature(rep)
        for lam in unordered_partitions(2 * g - 2 + n):
            wc = wall_crossing_direct(g, lam, wall, rep, seed=seed)
            diff = wc.difference
            if n == 2:
                # the positive chamber of a two-point profile is a single ray
                xs = [(a, -a) for a in range(1, points + 1)]
            else:
                xs = sample_chamber(sig, points, 12, seed + 17)
            for x in xs:
                q = {"g": g, "wall": [i + 1 for i in wall], "lambda": list(lam), "x": list(x)}
                got = wall_crossing_formula(g, x, wall, lam, allow_negative_middle_genus=neg)
                if not _compare(res, q, diff(x), got):
                    return res
    return res


SUITES = {
    "oracle-vs-tropical": suite_oracle_vs_tropical,
    "golden": suite_golden,
    "series": suite_series,
    "recursion": suite_recursion,
    "recursion-printed": lambda **kw: suite_recursion(reading="printed", **kw),
    "mixed": suite_mixed,
    "polynomiality": suite_polynomiality,
    "wallcross": suite_wallcross,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**{k: v for k, v in kwargs.items() if v is not None})
