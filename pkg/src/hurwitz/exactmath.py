"""Exact rational arithmetic: Bernoulli numbers and truncated Laurent series.

Every number in the package is a :class:`fractions.Fraction`; nothing here
ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

__all__ = [
    "TruncationError",
    "SingularSeriesError",
    "ConsistencyError",
    "TruncatedLaurentSeries",
    "bernoulli",
    "zeta_series",
    "s_series",
    "series_invert",
    "series_mul",
    "series_product",
    "inverse_zeta_series",
    "coefficient",
    "one_point_coefficient",
    "one_point_bernoulli",
    "format_fraction",
    "parse_fraction",
]


class TruncationError(IndexError):
    """Coefficient requested outside the range a series actually knows."""


class SingularSeriesError(ZeroDivisionError):
    """Inverting a series whose leading coefficient vanishes."""


class ConsistencyError(ArithmeticError):
    """Two independent computations of the same quantity disagree."""


class TruncatedLaurentSeries:
    """Finitely many exact coefficients ``a_k`` for ``min_degree <= k <= order``.

    ``order`` is the highest degree that is known exactly; anything above it is
    unknown and reading it raises :class:`TruncationError`.
    """

    __slots__ = ("min_degree", "coefficients", "order")

    def __init__(self, min_degree: int, coefficients: Iterable, order: int | None = None):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if order is None:
            order = min_degree + len(coeffs) - 1
        if order < min_degree - 1:
            raise ValueError("order below min_degree")
        n = order - min_degree + 1
        if len(coeffs) < n:
            coeffs = coeffs + (Fraction(0),) * (n - len(coeffs))
        object.__setattr__(self, "min_degree", min_degree)
        object.__setattr__(self, "coefficients", coeffs[:n])
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedLaurentSeries is immutable")

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficient(k)

    def coefficient(self, k: int) -> Fraction:
        if k > self.order:
            raise TruncationError(f"coefficient of z^{k} unknown (series valid through z^{self.order})")
        if k < self.min_degree:
            return Fraction(0)
        return self.coefficients[k - self.min_degree]

    def valuation(self) -> int | None:
        """Lowest degree with a nonzero known coefficient, or None."""
        for i, c in enumerate(self.coefficients):
            if c:
                return self.min_degree + i
        return None

    def truncate(self, order: int) -> "TruncatedLaurentSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend series valid through z^{self.order} to z^{order}")
        return TruncatedLaurentSeries(self.min_degree, self.coefficients, order)

    def scale_variable(self, y) -> "TruncatedLaurentSeries":
        """Substitute ``z -> y*z``."""
        y = Fraction(y)
        return TruncatedLaurentSeries(
            self.min_degree,
            (c * y ** (self.min_degree + i) for i, c in enumerate(self.coefficients)),
            self.order,
        )

    def __mul__(self, other):
        if isinstance(other, TruncatedLaurentSeries):
            return series_mul(self, other)
        other = Fraction(other)
        return TruncatedLaurentSeries(self.min_degree, (c * other for c in self.coefficients), self.order)

    __rmul__ = __mul__

    def __add__(self, other: "TruncatedLaurentSeries") -> "TruncatedLaurentSeries":
        lo = min(self.min_degree, other.min_degree)
        hi = min(self.order, other.order)
        return TruncatedLaurentSeries(lo, (self.coefficient(k) + other.coefficient(k) for k in range(lo, hi + 1)), hi)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        lo = min(self.min_degree, other.min_degree)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, self.order + 1))

    def __hash__(self):
        v = self.valuation()
        if v is None:
            return hash((self.order,))
        return hash((self.order, tuple(self.coefficient(k) for k in range(v, self.order + 1))))

    def __repr__(self):
        terms = [f"{c}*z^{self.min_degree + i}" for i, c in enumerate(self.coefficients) if c]
        return f"TruncatedLaurentSeries({' + '.join(terms) or '0'} + O(z^{self.order + 1}))"


def series_mul(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    # a_i is known for i <= a.order and b_j for j <= b.order; coefficient k of the
    # product needs every pair (i, k - i) with both factors in their known range.
    lo = a.min_degree + b.min_degree
    hi = min(a.order + b.min_degree, b.order + a.min_degree)
    out = [Fraction(0)] * (hi - lo + 1)
    for i, ai in enumerate(a.coefficients):
        if not ai:
            continue
        for j, bj in enumerate(b.coefficients):
            k = i + j
            if k > hi - lo:
                break
            out[k] += ai * bj
    return TruncatedLaurentSeries(lo, out, hi)


def coefficient(s: TruncatedLaurentSeries, k: int) -> Fraction:
    return s.coefficient(k)


def series_invert(s: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Multiplicative inverse; the leading stored coefficient must be nonzero."""
    if not s.coefficients or s.coefficients[0] == 0:
        raise SingularSeriesError("leading coefficient is zero")
    m = s.min_degree
    u = s.coefficients  # s = z^m * u(z), u known through degree order - m
    n = len(u)
    inv = [Fraction(0)] * n
    inv[0] = 1 / u[0]
    for k in range(1, n):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += u[j] * inv[k - j]
        inv[k] = -acc * inv[0]
    return TruncatedLaurentSeries(-m, inv, -m + n - 1)


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m for even m >= 0 (B_1 = -1/2 convention)."""
    if m < 0 or m % 2:
        raise ValueError(f"bernoulli() needs an even non-negative index, got {m}")
    if m == 0:
        return Fraction(1)
    # sum_{j=0}^{m} C(m+1, j) B_j = 0; odd B_j vanish except B_1.
    acc = Fraction(comb(m + 1, 1)) * Fraction(-1, 2)
    for j in range(0, m, 2):
        acc += comb(m + 1, j) * bernoulli(j)
    return -acc / (m + 1)


@lru_cache(maxsize=None)
def zeta_series(order: int) -> TruncatedLaurentSeries:
    """``2 sinh(z/2) = z + z^3/24 + z^5/1920 + ...`` through z^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Fraction(0)] * order
    for k in range(1, order + 1, 2):
        coeffs[k - 1] = Fraction(1, 2 ** (k - 1) * factorial(k))
    return TruncatedLaurentSeries(1, coeffs, order)


@lru_cache(maxsize=None)
def s_series(order: int) -> TruncatedLaurentSeries:
    """``S(z) = zeta(z)/z`` through z^order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return TruncatedLaurentSeries(0, zeta_series(order + 1).coefficients, order)


@lru_cache(maxsize=None)
def inverse_zeta_series(order: int) -> TruncatedLaurentSeries:
    """``1/zeta(z) = 1/z - z/24 + ...`` through z^order."""
    # 1/zeta loses two orders: valid through (order + 2) - 2.
    return series_invert(zeta_series(order + 2))


def one_point_bernoulli(l: int) -> Fraction:
    """Closed form ``-(2^{2l-1}-1)/2^{2l-1} * B_{2l}/(2l)!`` for l >= 1."""
    if l < 1:
        raise ValueError("closed form only for l >= 1")
    p = 2 ** (2 * l - 1)
    return -Fraction(p - 1, p) * bernoulli(2 * l) / factorial(2 * l)


@lru_cache(maxsize=None)
def one_point_coefficient(l: int) -> Fraction:
    """Stationary one-point weight ``[z^{2l-1}] 1/zeta(z)``.

    For l >= 1 the series value is cross-checked against the Bernoulli closed
    form; a mismatch raises :class:`ConsistencyError`.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    value = inverse_zeta_series(2 * l - 1).coefficient(2 * l - 1)
    if l >= 1:
        other = one_point_bernoulli(l)
        if other != value:
            raise ConsistencyError(f"one-point coefficient l={l}: series {value} != Bernoulli {other}")
    return value


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def series_product(factors: Sequence[TruncatedLaurentSeries]) -> TruncatedLaurentSeries:
    out = factors[0]
    for f in factors[1:]:
        out = series_mul(out, f)
    return out
