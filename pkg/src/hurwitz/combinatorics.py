"""Profiles, partitions, compositions and multiset helpers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Profile",
    "ordered_partitions",
    "unordered_partitions",
    "orderings_of",
    "multiset_aut",
    "submultisets",
    "weighted_compositions",
    "partitions_bounded",
    "set_partitions",
]


@dataclass(frozen=True)
class Profile:
    """Nonzero integers summing to zero; entry order is the end labelling."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(e == 0 for e in entries):
            raise ValueError(f"profile {entries} has a zero entry")
        if sum(entries) != 0:
            raise ValueError(f"profile {entries} does not sum to zero")
        if not entries:
            raise ValueError("empty profile")

    @classmethod
    def parse(cls, text: str) -> "Profile":
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @classmethod
    def from_parts(cls, plus: Sequence[int], minus: Sequence[int]) -> "Profile":
        return cls(tuple(plus) + tuple(-m for m in minus))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(e for e in self.entries if e > 0)

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(-e for e in self.entries if e < 0)

    @property
    def degree(self) -> int:
        return sum(self.plus)

    def b(self, g: int) -> int:
        """Number of simple branch points, 2g - 2 + n."""
        return 2 * g - 2 + self.n

    def canonical(self) -> "Profile":
        """Positive parts descending, then negative parts by descending size."""
        return Profile.from_parts(sorted(self.plus, reverse=True), sorted(self.minus, reverse=True))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return ",".join(str(e) for e in self.entries)


def ordered_partitions(b: int) -> list[tuple[int, ...]]:
    """All compositions of b (2^(b-1) of them)."""
    if b <= 0:
        raise ValueError("b must be positive")
    out = []
    # each of the b-1 gaps is either a cut or not
    for cuts in product((False, True), repeat=b - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    out.sort(key=lambda t: (len(t), t))
    return out


def partitions_bounded(total: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing tuples of positive integers summing to ``total``."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions_bounded(total - first, first, rest_len):
            yield (first,) + rest


def unordered_partitions(b: int) -> list[tuple[int, ...]]:
    if b < 0:
        raise ValueError("b must be non-negative")
    return list(partitions_bounded(b))


def orderings_of(parts: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct orderings of a multiset of parts."""
    counts = Counter(parts)
    keys = sorted(counts, reverse=True)
    n = len(parts)
    out: list[tuple[int, ...]] = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                rec(prefix)
                prefix.pop()
                counts[k] += 1

    rec([])
    return out


def multiset_aut(t: Iterable) -> int:
    """Product of factorials of the multiplicities."""
    return prod(factorial(m) for m in Counter(t).values())


def submultisets(t: Sequence) -> list[tuple[tuple, tuple]]:
    """Every (sub, complement) split of a multiset, each exactly once."""
    counts = sorted(Counter(t).items())
    out = []
    for picks in product(*(range(m + 1) for _, m in counts)):
        sub, rest = [], []
        for (v, m), k in zip(counts, picks):
            sub.extend([v] * k)
            rest.extend([v] * (m - k))
        out.append((tuple(sub), tuple(rest)))
    return out


def weighted_compositions(total: int, min_parts: int = 1) -> list[tuple[int, ...]]:
    """Multisets of positive integers summing to ``total`` with at least ``min_parts`` parts."""
    if total < 1:
        raise ValueError("total must be >= 1")
    return [p for p in partitions_bounded(total) if len(p) >= min_parts]


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Partitions of a list into unordered nonempty blocks (blocks keep item order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
