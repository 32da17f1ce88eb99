"""Brute-force factorization counts in S_d.

This is the ground truth every tropical computation is checked against.  It
enumerates tuples ``(sigma_1, tau_1, ..., tau_b, sigma_2)`` with
``sigma_2 = tau_b ... tau_1 sigma_1`` directly.  Permutations are tuples of
0-based images; ``(t o p)(i) = t[p[i]]``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .combinatorics import Profile

__all__ = [
    "ResourceLimitError",
    "FactorizationQuery",
    "count_factorizations",
    "count_tuples",
    "conjugacy_type",
    "is_transitive",
    "compose",
    "transposition",
    "DEFAULT_DEGREE_LIMIT",
]

DEFAULT_DEGREE_LIMIT = 7

VARIANTS = ("plain", "monotone", "strict", "mixed")


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class FactorizationQuery:
    g: int
    x: Profile
    variant: str = "monotone"
    connected: bool = True
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if not isinstance(self.x, Profile):
            object.__setattr__(self, "x", Profile(tuple(self.x)))
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        b = self.b
        if b < 0:
            raise ValueError(f"b = 2g-2+n = {b} is negative")
        if self.variant == "mixed":
            if self.p < 0 or self.q < 0 or self.p + self.q > b:
                raise ValueError(f"mixed needs p, q >= 0 and p + q <= b = {b}")

    @property
    def b(self) -> int:
        return self.x.b(self.g)

    def blocks(self) -> tuple[int, int]:
        """(number of strictly monotone steps, number of weakly monotone steps)."""
        b = self.b
        if self.variant == "plain":
            return 0, 0
        if self.variant == "monotone":
            return 0, b
        if self.variant == "strict":
            return b, 0
        return self.p, self.q


def compose(t: tuple[int, ...], p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(t[i] for i in p)


def transposition(d: int, r: int, s: int) -> tuple[int, ...]:
    img = list(range(d))
    img[r], img[s] = s, r
    return tuple(img)


def _cycles(p: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            cyc, j = [], i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            out.append(cyc)
    return out


def conjugacy_type(p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in _cycles(p)), reverse=True))


def is_transitive(perms, d: int) -> bool:
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        for i in range(d):
            ra, rb = find(i), find(p[i])
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(d)}) <= 1


def _merge(blocks: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    # blocks[i] is the smallest element of i's orbit
    ra, rb = blocks[a], blocks[b]
    if ra == rb:
        return blocks
    lo, hi = min(ra, rb), max(ra, rb)
    return tuple(lo if r == hi else r for r in blocks)


def _orbit_blocks(p: tuple[int, ...]) -> tuple[int, ...]:
    blocks = [0] * len(p)
    for cyc in _cycles(p):
        m = min(cyc)
        for i in cyc:
            blocks[i] = m
    return tuple(blocks)


def _parity(p) -> int:
    return (len(p) - len(_cycles(p))) % 2


@lru_cache(maxsize=None)
def count_tuples(plus: tuple[int, ...], minus: tuple[int, ...], b: int, p: int, q: int, connected: bool) -> int:
    """Number of qualifying tuples (before dividing by d!).

    ``plus``/``minus`` are sorted descending; the first ``p`` transpositions are
    strictly monotone in their larger entry, the next ``q`` weakly monotone,
    the rest unconstrained.
    """
    d = sum(plus)
    target = tuple(sorted(minus, reverse=True))
    target_cycles = len(target)
    target_parity = (d - target_cycles) % 2
    trans = [(r, s, transposition(d, r, s)) for s in range(d) for r in range(s)]

    # state: (current product, larger entry of previous transposition, orbit blocks)
    states: dict = defaultdict(int)
    for perm in permutations(range(d)):
        if conjugacy_type(perm) == tuple(plus):
            states[(perm, -1, _orbit_blocks(perm))] += 1

    for step in range(b):
        remaining = b - step - 1
        if step < p:
            kind = "strict" if step > 0 else "free"
        elif step < p + q:
            kind = "weak" if step > p else "free"
        else:
            kind = "free"
        new: dict = defaultdict(int)
        for (perm, last, blocks), cnt in states.items():
            for r, s, t in trans:
                if kind == "strict" and s <= last:
                    continue
                if kind == "weak" and s < last:
                    continue
                nxt = compose(t, perm)
                ncyc = len(_cycles(nxt))
                if abs(ncyc - target_cycles) > remaining:
                    continue
                if ((d - ncyc) + remaining) % 2 != target_parity:
                    continue
                new[(nxt, s, _merge(blocks, r, s))] += cnt
        states = new

    total = 0
    for (perm, _, blocks), cnt in states.items():
        if conjugacy_type(perm) != target:
            continue
        if connected and len(set(blocks)) > 1:
            continue
        total += cnt
    return total


def count_factorizations(query: FactorizationQuery, degree_limit: int = DEFAULT_DEGREE_LIMIT) -> Fraction:
    """(Strictly) monotone / plain / mixed double Hurwitz number by enumeration."""
    x = query.x
    d = x.degree
    if d > degree_limit:
        raise ResourceLimitError(f"degree {d} exceeds the oracle limit {degree_limit}")
    p, q = query.blocks()
    plus = tuple(sorted(x.plus, reverse=True))
    minus = tuple(sorted(x.minus, reverse=True))
    return Fraction(count_tuples(plus, minus, query.b, p, q, query.connected), factorial(d))
