"""Chambers of the resonance arrangement, exact chamber polynomials, wall crossing.

Fitted quantities are labelled-end slices (``labeled_ends=True``): the
Hurwitz-number normalisation divides by end symmetries, which jump on
profiles with repeated entries and are not polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Iterable, Sequence

from .combinatorics import Profile, ordered_partitions, submultisets
from .exactmath import format_fraction, parse_fraction
from .tropical import MONOTONE, h_slice

__all__ = [
    "OnWallError",
    "InsufficientSamplesError",
    "FitFailureError",
    "ChamberSignature",
    "MultivariatePolynomial",
    "FitResult",
    "WallCrossing",
    "chamber_signature",
    "adjacent_signature",
    "sample_chamber",
    "solve_exact",
    "fit_chamber_polynomial",
    "wall_crossing_direct",
    "wall_crossing_formula",
    "degree_bound",
]


class OnWallError(ValueError):
    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"profile lies on the wall x_I = 0 for I = {{{', '.join(str(i + 1) for i in self.subset)}}}")


class InsufficientSamplesError(RuntimeError):
    pass


class FitFailureError(RuntimeError):
    pass


def degree_bound(g: int, n: int) -> int:
    return 4 * g - 3 + n


def _normal_subset(I: Iterable[int], n: int) -> tuple[int, ...]:
    """Representative of {I, I^c} that contains index 0."""
    I = tuple(sorted(set(I)))
    if 0 in I:
        return I
    return tuple(i for i in range(n) if i not in I)


@dataclass(frozen=True)
class ChamberSignature:
    """Sign of x_I for every proper nonempty subset class {I, I^c}."""

    n: int
    signs: tuple[tuple[tuple[int, ...], int], ...]

    def sign(self, I: Iterable[int]) -> int:
        I = tuple(sorted(set(I)))
        key = _normal_subset(I, self.n)
        s = dict(self.signs)[key]
        return s if key == I else -s

    def flipped(self, I: Iterable[int]) -> "ChamberSignature":
        key = _normal_subset(I, self.n)
        return ChamberSignature(self.n, tuple((k, -s if k == key else s) for k, s in self.signs))

    def contains(self, x: Sequence[int]) -> bool:
        try:
            return chamber_signature(x) == self
        except OnWallError:
            return False

    def __str__(self):
        return " ".join(f"{{{','.join(str(i + 1) for i in k)}}}:{'+' if s > 0 else '-'}" for k, s in self.signs)


def chamber_signature(x: Sequence[int]) -> ChamberSignature:
    x = tuple(x)
    n = len(x)
    if sum(x) != 0:
        raise ValueError("profile must sum to zero")
    signs = []
    for r in range(1, n):
        for I in combinations(range(n), r):
            if 0 not in I:
                continue
            s = sum(x[i] for i in I)
            if s == 0:
                raise OnWallError(I)
            signs.append((I, 1 if s > 0 else -1))
    return ChamberSignature(n, tuple(signs))


def adjacent_signature(sig: ChamberSignature, I: Iterable[int]) -> ChamberSignature:
    """The chamber on the other side of the wall x_I = 0."""
    return sig.flipped(I)


# --------------------------------------------------------------------------
# polynomials


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        # compositions of d into nvars non-negative parts
        for bars in combinations(range(d + nvars - 1), nvars - 1):
            prev, exps = -1, []
            for bpos in bars:
                exps.append(bpos - prev - 1)
                prev = bpos
            exps.append(d + nvars - 1 - prev - 1)
            out.append(tuple(exps))
    return out


@dataclass(frozen=True)
class MultivariatePolynomial:
    """Exact polynomial in x_1..x_{n-1}; x_n = -(x_1 + ... + x_{n-1}) is eliminated."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, nvars: int, coeffs: dict) -> "MultivariatePolynomial":
        return cls(nvars, tuple(sorted((tuple(e), Fraction(c)) for e, c in coeffs.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x: Sequence[int]) -> Fraction:
        return self.evaluate(x)

    def evaluate(self, x: Sequence[int]) -> Fraction:
        """Evaluate at a full profile (the last coordinate is ignored) or at n-1 free coordinates."""
        pt = tuple(x)[: self.nvars]
        total = Fraction(0)
        for exps, c in self.terms:
            term = c
            for v, e in zip(pt, exps):
                if e:
                    term *= Fraction(v) ** e
            total += term
        return total

    def __sub__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, Fraction(0)) - c
        return MultivariatePolynomial.from_dict(self.nvars, out)

    def __add__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, Fraction(0)) + c
        return MultivariatePolynomial.from_dict(self.nvars, out)

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coefficient": format_fraction(c)} for e, c in self.terms]

    @classmethod
    def from_json(cls, nvars: int, data: list[dict]) -> "MultivariatePolynomial":
        return cls.from_dict(nvars, {tuple(t["exponents"]): parse_fraction(t["coefficient"]) for t in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"({format_fraction(c)})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve an (over)determined system exactly by row reduction.

    Raises InsufficientSamplesError when the columns are dependent and
    FitFailureError when the system is inconsistent.
    """
    m = len(rows[0]) if rows else 0
    A = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            raise InsufficientSamplesError(f"sample matrix is rank deficient at column {col}")
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][col]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(A)):
        if A[i][m] != 0:
            raise FitFailureError("sample values are not interpolated by any polynomial of the allowed degree")
    return [A[i][m] for i in range(m)]


def sample_chamber(sig: ChamberSignature, count: int, box: int, seed: int = 0, max_tries: int = 200000) -> list[tuple[int, ...]]:
    """Distinct lattice points of the chamber with all |x_i| <= box, drawn reproducibly."""
    rng = random.Random(seed)
    n = sig.n
    seen: set = set()
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        free = [rng.randint(-box, box) for _ in range(n - 1)]
        x = tuple(free) + (-sum(free),)
        if x in seen or abs(x[-1]) > box or 0 in x:
            continue
        seen.add(x)
        if sig.contains(x):
            out.append(x)
    if len(out) < count:
        raise InsufficientSamplesError(f"found {len(out)} of {count} lattice points in the chamber within box {box}")
    return out


@dataclass(frozen=True)
class FitResult:
    polynomial: MultivariatePolynomial
    g: int
    lam: tuple[int, ...]
    variant: str
    signature: ChamberSignature
    seed: int
    box: int
    fit_samples: tuple[tuple[tuple[int, ...], Fraction], ...]
    heldout_samples: tuple[tuple[tuple[int, ...], Fraction], ...]
    monomials: int

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "lambda": list(self.lam),
            "variant": self.variant,
            "chamber": str(self.signature),
            "seed": self.seed,
            "box": self.box,
            "degree": self.polynomial.degree,
            "monomials": self.monomials,
            "polynomial": self.polynomial.to_json(),
            "samples": [{"x": list(x), "value": format_fraction(v)} for x, v in self.fit_samples],
            "heldout": [{"x": list(x), "value": format_fraction(v)} for x, v in self.heldout_samples],
        }


def _slice_labeled(g, x, lam, variant, connected):
    return h_slice(g, Profile(x), lam, variant, connected, labeled_ends=True)


def fit_chamber_polynomial(
    g: int,
    lam: Sequence[int],
    signature: ChamberSignature,
    variant=MONOTONE,
    connected: bool = True,
    box: int | None = None,
    seed: int = 0,
    heldout_fraction: float = 0.25,
) -> FitResult:
    """Interpolate the labelled-end lambda-slice on one chamber.

    Uses every monomial of total degree <= 4g-3+n in the free coordinates,
    fits on a few more samples than unknowns and checks the result exactly
    on at least ``heldout_fraction`` times as many fresh points.  Without an
    explicit ``box`` the sampling box starts at 10 and grows until the
    chamber holds enough lattice points.
    """
    n = signature.n
    lam = tuple(sorted(lam, reverse=True))
    if sum(lam) != 2 * g - 2 + n:
        raise ValueError("|lambda| must equal 2g-2+n")
    D = degree_bound(g, n)
    if D < 0:
        raise FitFailureError(f"degree bound 4g-3+n = {D} is negative; no polynomial regime")
    monos = _monomials(n - 1, D)
    n_fit = len(monos) + max(2, len(monos) // 10)
    n_hold = max(2, ceil(heldout_fraction * len(monos)))
    if box is None:
        box = 10
        while True:
            try:
                points = sample_chamber(signature, n_fit + n_hold, box, seed)
                break
            except InsufficientSamplesError:
                if box >= 160:
                    raise
                box *= 2
    else:
        points = sample_chamber(signature, n_fit + n_hold, box, seed)
    vname = variant if isinstance(variant, str) else variant.kind
    values = [_slice_labeled(g, x, lam, variant, connected) for x in points]
    fit_pts, hold_pts = points[:n_fit], points[n_fit:]
    rows = []
    for x in fit_pts:
        row = []
        for e in monos:
            v = Fraction(1)
            for xi, k in zip(x, e):
                v *= Fraction(xi) ** k
            row.append(v)
        rows.append(row)
    coeffs = solve_exact(rows, values[:n_fit])
    poly = MultivariatePolynomial.from_dict(n - 1, dict(zip(monos, coeffs)))
    for x, v in zip(hold_pts, values[n_fit:]):
        if poly(x) != v:
            raise FitFailureError(f"held-out sample {x}: polynomial gives {poly(x)}, slice is {v}")
    return FitResult(
        poly,
        g,
        lam,
        vname,
        signature,
        seed,
        box,
        tuple(zip(fit_pts, values[:n_fit])),
        tuple(zip(hold_pts, values[n_fit:])),
        len(monos),
    )


@dataclass(frozen=True)
class WallCrossing:
    wall: tuple[int, ...]
    lam: tuple[int, ...]
    negative_side: FitResult
    positive_side: FitResult

    @property
    def difference(self) -> MultivariatePolynomial:
        return self.positive_side.polynomial - self.negative_side.polynomial


def wall_crossing_direct(
    g: int,
    lam: Sequence[int],
    I: Iterable[int],
    x_positive: Sequence[int],
    variant=MONOTONE,
    box: int | None = None,
    seed: int = 0,
) -> WallCrossing:
    """Fit both chambers adjacent along x_I = 0; ``x_positive`` locates the x_I > 0 side."""
    I = tuple(sorted(I))
    sig2 = chamber_signature(x_positive)
    if sig2.sign(I) < 0:
        raise ValueError("x_positive must satisfy x_I > 0")
    sig1 = adjacent_signature(sig2, I)
    p1 = fit_chamber_polynomial(g, lam, sig1, variant, True, box, seed)
    p2 = fit_chamber_polynomial(g, lam, sig2, variant, True, box, seed + 1)
    return WallCrossing(I, tuple(sorted(lam, reverse=True)), p1, p2)


def _all_compositions(s: int) -> list[tuple[int, ...]]:
    return ordered_partitions(s)


def _splittings3(lam: Sequence[int]):
    """Ordered triples of sub-multisets (lam1, lam2, lam3) with union lam."""
    for l1, rest in submultisets(tuple(sorted(lam))):
        for l2, l3 in submultisets(rest):
            yield l1, l2, l3


def _genus_for(b: int, n: int) -> int | None:
    twice = b + 2 - n
    return twice // 2 if twice % 2 == 0 else None


def wall_crossing_formula(
    g: int,
    x: Sequence[int],
    I: Iterable[int],
    lam: Sequence[int],
    variant=MONOTONE,
    allow_negative_middle_genus: bool = False,
    allow_trivial_outer: bool = False,
) -> Fraction:
    """Right-hand side of the wall-crossing identity at a profile with x_I > 0.

    Sums over ordered tuples y, z with |y| = |z| = x_I and over splittings of
    lambda into three roles; a term whose genus comes out negative or
    half-integral is dropped.  The middle (disconnected) factor may have
    negative genus when ``allow_negative_middle_genus`` is set.
    """
    x = tuple(x)
    n = len(x)
    I = tuple(sorted(I))
    Ic = tuple(i for i in range(n) if i not in I)
    xI = sum(x[i] for i in I)
    if xI == 0:
        raise OnWallError(I)
    if xI < 0:
        raise ValueError("profile must lie in the chamber with x_I > 0")
    x_in = tuple(x[i] for i in I)
    x_out = tuple(x[i] for i in Ic)
    comps = _all_compositions(xI)
    total = Fraction(0)
    splits = list(_splittings3(lam))
    for y in comps:
        py = Fraction(1)
        for v in y:
            py *= v
        py /= _fact(len(y))
        for z in comps:
            pz = Fraction(1)
            for v in z:
                pz *= v
            pz /= _fact(len(z))
            prof1 = x_in + tuple(-v for v in y)
            prof2 = tuple(y) + tuple(-v for v in z)
            prof3 = tuple(z) + x_out
            for l1, l2, l3 in splits:
                g1 = _genus_for(sum(l1), len(prof1))
                g2 = _genus_for(sum(l2), len(prof2))
                g3 = _genus_for(sum(l3), len(prof3))
                if g1 is None or g2 is None or g3 is None or g1 < 0 or g3 < 0:
                    continue
                if g2 < 0 and not allow_negative_middle_genus:
                    continue
                if not allow_trivial_outer and ((len(prof1) == 2 and not l1) or (len(prof3) == 2 and not l3)):
                    continue
                h1 = h_slice(g1, Profile(prof1), l1, variant, True, labeled_ends=True)
                if not h1:
                    continue
                h3 = h_slice(g3, Profile(prof3), l3, variant, True, labeled_ends=True)
                if not h3:
                    continue
                h2 = h_slice(g2, Profile(prof2), l2, variant, False, labeled_ends=True)
                if not h2:
                    continue
                total += (-1) ** len(l2) * py * pz * h1 * h2 * h3
    return total


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out
