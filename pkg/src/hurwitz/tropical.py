"""Tropical covers weighted by Gromov-Witten vertex multiplicities.

Covers are built by a left-to-right sweep.  Inner vertices sit at the ordered
points p_1 < p_2 < ...; an internal edge always runs from an earlier vertex to
a later one.  Ends are labelled by their position in the profile.

Two routes compute the same sums:

* :func:`enumerate_covers` materialises every cover (used for inspection,
  export and cross-checks);
* :func:`core_value` runs the same sweep as a memoised dynamic programme on
  unlabelled sweep states and never builds a cover.  The connected value is
  obtained from the disconnected one by peeling off the component that
  contains the first end.

Normalisations used throughout:

``core`` = sum over labelled covers of
    prod(sign_v * M(v)) * prod(internal weights) / |Aut_par| / prod(straight weights)

``vec_h`` = core / (l(lambda)! * |Aut x+| * |Aut x-|)

where ``Aut_par`` permutes parallel internal edges of equal weight.  Dividing
by the end symmetries turns the labelled count into the Hurwitz number; pass
``labeled_ends=True`` to keep the labelled count (the quantity that is
polynomial in chambers).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial, prod
from typing import Iterator, Sequence

from .combinatorics import (
    Profile,
    multiset_aut,
    ordered_partitions,
    orderings_of,
    partitions_bounded,
    unordered_partitions,
)
from .exactmath import one_point_coefficient, s_series, series_invert, series_mul

__all__ = [
    "CombinatorialCover",
    "Variant",
    "MONOTONE",
    "STRICT",
    "vertex_multiplicity",
    "enumerate_covers",
    "cover_automorphism_order",
    "cover_contribution",
    "core_value",
    "vec_h",
    "h_slice",
    "h_total",
    "mixed_slice",
    "mixed_total",
    "mixed_layout",
    "export_cover",
]


@dataclass(frozen=True)
class Variant:
    """``monotone``, ``strict`` or ``mixed`` (first p strict, next q weak)."""

    kind: str
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind not in ("monotone", "strict", "mixed"):
            raise ValueError(f"unknown variant {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "Variant":
        return cls(text)


MONOTONE = Variant("monotone")
STRICT = Variant("strict")


def _as_variant(v) -> Variant:
    return v if isinstance(v, Variant) else Variant(v)


# --------------------------------------------------------------------------
# vertex weights


@lru_cache(maxsize=None)
def _vertex_multiplicity(y_plus: tuple[int, ...], y_minus: tuple[int, ...], gv: int) -> Fraction:
    lam = len(y_plus) + len(y_minus) + 2 * gv - 2
    order = 2 * gv
    s = s_series(order)
    num = series_invert(s)
    for y in y_plus + y_minus:
        num = series_mul(num, s.scale_variable(y))
    total = Fraction(0)
    for g1 in range(gv + 1):
        total += one_point_coefficient(gv - g1) * num.coefficient(2 * g1)
    return factorial(lam - 1) * total


def vertex_multiplicity(y_plus: Sequence[int], y_minus: Sequence[int], gv: int) -> Fraction:
    """M(v) for a vertex with incoming weights y_plus, outgoing y_minus, genus gv.

    ``(lam-1)! * sum_{g1+g2=gv} c(g2) [w^{2 g1}] prod S(y w) / S(w)`` with
    ``lam = val + 2 gv - 2`` and ``c(l) = [z^{2l-1}] 1/zeta(z)``.
    """
    if gv < 0:
        raise ValueError("vertex genus must be non-negative")
    if any(y == 0 for y in (*y_plus, *y_minus)):
        raise ValueError("edge weights must be nonzero")
    lam = len(y_plus) + len(y_minus) + 2 * gv - 2
    if lam < 1:
        raise ValueError(f"vertex type lambda_i = {lam} < 1")
    # S is even, so only |y| matters
    return _vertex_multiplicity(
        tuple(sorted(abs(y) for y in y_plus)), tuple(sorted(abs(y) for y in y_minus)), gv
    )


# --------------------------------------------------------------------------
# explicit covers


@dataclass(frozen=True)
class CombinatorialCover:
    """A labelled-end cover with inner vertices in sweep order.

    ``ends[j]`` is ``(vertex, weight)`` for profile position j; ``vertex`` is
    None when the end belongs to a straight (vertex-free) edge, in which case
    ``straight`` lists it as an ``(in_label, out_label)`` pair.
    """

    profile: tuple[int, ...]
    lam: tuple[int, ...]
    genera: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    ends: tuple[tuple[int | None, int], ...]
    straight: tuple[tuple[int, int], ...] = ()

    def y_plus(self, i: int) -> tuple[int, ...]:
        inc = [w for t, h, w in self.edges if h == i]
        inc += [self.profile[j] for j, (v, _) in enumerate(self.ends) if v == i and self.profile[j] > 0]
        return tuple(sorted(inc))

    def y_minus(self, i: int) -> tuple[int, ...]:
        out = [w for t, h, w in self.edges if t == i]
        out += [-self.profile[j] for j, (v, _) in enumerate(self.ends) if v == i and self.profile[j] < 0]
        return tuple(sorted(out))

    def valence(self, i: int) -> int:
        return len(self.y_plus(i)) + len(self.y_minus(i))

    def components(self) -> list[set]:
        """Connected components as sets of nodes ('v', i) and ('e', j)."""
        nodes = [("v", i) for i in range(len(self.lam))] + [("e", j) for j in range(len(self.profile))]
        parent = {u: u for u in nodes}

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(a, b):
            parent[find(a)] = find(b)

        for t, h, _ in self.edges:
            union(("v", t), ("v", h))
        for j, (v, _) in enumerate(self.ends):
            if v is not None:
                union(("e", j), ("v", v))
        for a, b in self.straight:
            union(("e", a), ("e", b))
        groups: dict = {}
        for u in nodes:
            groups.setdefault(find(u), set()).add(u)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def h1(self) -> int:
        """First Betti number of the graph (ends and straight edges are trees)."""
        v_comp = [c for c in self.components() if any(u[0] == "v" for u in c)]
        return len(self.edges) - len(self.lam) + len(v_comp)

    def genus(self) -> int:
        """Arithmetic genus 1 - chi/2, additive over components minus (components - 1)."""
        return self.h1() + sum(self.genera) - len(self.components()) + 1

    def canonical_key(self) -> tuple:
        return (self.profile, self.lam, self.genera, tuple(sorted(self.edges)), self.ends, tuple(sorted(self.straight)))

    def validate(self) -> None:
        """Raise AssertionError if any structural invariant fails."""
        L = len(self.lam)
        assert len(self.genera) == L
        for t, h, w in self.edges:
            assert 0 <= t < h < L and w >= 1, (t, h, w)
        for i in range(L):
            yp, ym = self.y_plus(i), self.y_minus(i)
            assert sum(yp) == sum(ym), f"vertex {i} unbalanced: {yp} vs {ym}"
            assert yp and ym
            assert self.lam[i] == len(yp) + len(ym) + 2 * self.genera[i] - 2
            assert self.genera[i] >= 0
        used = {j for j, (v, _) in enumerate(self.ends) if v is not None}
        straight_labels = [a for a, b in self.straight] + [b for a, b in self.straight]
        assert sorted(straight_labels + sorted(used)) == list(range(len(self.profile)))
        for a, b in self.straight:
            assert self.profile[a] == -self.profile[b] > 0
        # Euler characteristic: sum(lam) = 2 genus - 2 + n
        assert sum(self.lam) == 2 * self.genus() - 2 + len(self.profile)


def _straight_matchings(ins: list[int], outs: list[int], x: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if len(ins) != len(outs):
        return
    if not ins:
        yield ()
        return
    a = ins[0]
    for k, bl in enumerate(outs):
        if x[a] == -x[bl]:
            for rest in _straight_matchings(ins[1:], outs[:k] + outs[k + 1 :], x):
                yield ((a, bl),) + rest


def _subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def _capacities(lam: Sequence[int]) -> list[int]:
    # cap[i]: how many open edges vertices i, i+1, ... can still absorb
    cap = [0] * (len(lam) + 1)
    for i in range(len(lam) - 1, -1, -1):
        cap[i] = cap[i + 1] + lam[i] + 1
    return cap


def enumerate_covers(x, lam: Sequence[int], connected: bool = True) -> Iterator[CombinatorialCover]:
    """Every cover of profile ``x`` with ordered vertex types ``lam``, once each."""
    x = tuple(Profile(tuple(x)).entries)
    lam = tuple(lam)
    L = len(lam)
    cap = _capacities(lam)
    ins0 = [j for j, e in enumerate(x) if e > 0]
    outs0 = [j for j, e in enumerate(x) if e < 0]

    def rec(i, open_, unused_in, unused_out, genera, edges, ends):
        # open_: tuple of (tail, weight) with repetition, sorted
        if i == L:
            if open_:
                return
            for match in _straight_matchings(list(unused_in), list(unused_out), x):
                if connected and match and L > 0:
                    continue
                cover = CombinatorialCover(x, lam, tuple(genera), tuple(sorted(edges)), tuple(ends[j] for j in range(len(x))), match)
                if connected and not cover.is_connected():
                    continue
                yield cover
            return
        lam_i = lam[i]
        groups = sorted(Counter(open_).items())
        for picks in product(*(range(c + 1) for _, c in groups)):
            consumed = [tw for (tw, c), k in zip(groups, picks) for _ in range(k)]
            rest = list(open_)
            for tw in consumed:
                rest.remove(tw)
            for A in _subsets(unused_in):
                k_in = len(consumed) + len(A)
                if k_in == 0 or k_in > lam_i + 1:
                    continue
                W = sum(w for _, w in consumed) + sum(x[j] for j in A)
                for B in _subsets(unused_out):
                    wb = -sum(x[j] for j in B)
                    R = W - wb
                    if R < 0 or (i == L - 1 and R > 0):
                        continue
                    room = lam_i + 2 - k_in - len(B)
                    if room < 0:
                        continue
                    part_iter = [()] if R == 0 else partitions_bounded(R, max_len=room)
                    for parts in part_iter:
                        val = k_in + len(B) + len(parts)
                        if val > lam_i + 2 or (lam_i + 2 - val) % 2:
                            continue
                        if not parts and not B:
                            continue
                        if len(rest) + len(parts) > cap[i + 1]:
                            continue
                        gv = (lam_i + 2 - val) // 2
                        new_edges = edges + [(t, i, w) for t, w in consumed]
                        new_ends = dict(ends)
                        for j in A + B:
                            new_ends[j] = (i, abs(x[j]))
                        new_open = tuple(sorted(rest + [(i, w) for w in parts]))
                        yield from rec(
                            i + 1,
                            new_open,
                            tuple(j for j in unused_in if j not in A),
                            tuple(j for j in unused_out if j not in B),
                            genera + [gv],
                            new_edges,
                            new_ends,
                        )

    base_ends = {j: (None, abs(e)) for j, e in enumerate(x)}
    yield from rec(0, (), tuple(ins0), tuple(outs0), [], [], base_ends)


def cover_automorphism_order(c: CombinatorialCover) -> int:
    """Permutations of parallel internal edges with equal weight."""
    return multiset_aut(c.edges)


def _strict_mask(variant: Variant, L: int, decomposition=None) -> tuple[bool, ...]:
    if variant.kind == "monotone":
        return (False,) * L
    if variant.kind == "strict":
        return (True,) * L
    if decomposition is None:
        raise ValueError("mixed variant needs the (lam1, lam2) decomposition")
    lam1 = decomposition[0]
    return (True,) * len(lam1) + (False,) * (L - len(lam1))


def _normaliser(variant: Variant, lam, decomposition=None) -> int:
    if variant.kind == "mixed":
        lam1, lam2 = decomposition[0], decomposition[1]
        return factorial(len(lam1)) * factorial(len(lam2))
    return factorial(len(lam))


def _raw_cover_weight(c: CombinatorialCover, mask: Sequence[bool]) -> Fraction:
    w = Fraction(1)
    for i in range(len(c.lam)):
        yp, ym = c.y_plus(i), c.y_minus(i)
        m = vertex_multiplicity(yp, ym, c.genera[i])
        if mask[i] and (len(yp) + len(ym)) % 2 == 0:
            m = -m
        w *= m
    for _, _, om in c.edges:
        w *= om
    for a, _ in c.straight:
        w /= c.profile[a]
    return w / cover_automorphism_order(c)


def cover_contribution(c: CombinatorialCover, variant=MONOTONE, decomposition=None, labeled_ends: bool = False) -> Fraction:
    """Contribution of one cover to its lambda-slice.

    For ``mixed``, ``decomposition = (lam1, lam2)`` gives the strictly and
    weakly monotone blocks at the front of ``c.lam``.
    """
    variant = _as_variant(variant)
    mask = _strict_mask(variant, len(c.lam), decomposition)
    w = _raw_cover_weight(c, mask) / _normaliser(variant, c.lam, decomposition)
    if not labeled_ends:
        p = Profile(c.profile)
        w /= multiset_aut(p.plus) * multiset_aut(p.minus)
    return w


# --------------------------------------------------------------------------
# fast route: memoised sweep on unlabelled states


def _sub_multisets(ms: tuple[int, ...]):
    """(chosen, rest, number of label choices) for a sorted multiset."""
    counts = sorted(Counter(ms).items())
    for picks in product(*(range(m + 1) for _, m in counts)):
        chosen, rest, ways = [], [], 1
        for (v, m), k in zip(counts, picks):
            chosen += [v] * k
            rest += [v] * (m - k)
            ways *= comb(m, k)
        yield tuple(chosen), tuple(rest), ways


def _straight_value(ins: tuple[int, ...], outs: tuple[int, ...]) -> Fraction:
    if sorted(ins) != sorted(outs):
        return Fraction(0)
    # bijections between equal-weight labelled ends, each edge weighted 1/w
    return Fraction(multiset_aut(ins), prod(ins))


@lru_cache(maxsize=None)
def _disconnected_core(plus: tuple[int, ...], minus: tuple[int, ...], lam: tuple[int, ...], mask: tuple[bool, ...]) -> Fraction:
    L = len(lam)
    cap = _capacities(lam)
    memo: dict = {}

    def sweep(i, open_, ins, outs):
        # open_: sorted tuple of (weight, count) groups; groups never merge
        key = (i, open_, ins, outs)
        if key in memo:
            return memo[key]
        if i == L:
            val = Fraction(0) if open_ else _straight_value(ins, outs)
            memo[key] = val
            return val
        lam_i = lam[i]
        total = Fraction(0)
        for picks in product(*(range(c + 1) for _, c in open_)):
            k_open = sum(picks)
            if k_open > lam_i + 1:
                continue
            rest = tuple(sorted((w, c - k) for (w, c), k in zip(open_, picks) if c - k))
            n_rest = sum(c for _, c in rest)
            if n_rest > cap[i + 1]:
                continue
            edge_factor = Fraction(1)
            consumed = []
            for (w, c), k in zip(open_, picks):
                if k:
                    edge_factor *= Fraction(w**k, factorial(k))
                    consumed += [w] * k
            for A, ins_rest, ways_a in _sub_multisets(ins):
                k_in = k_open + len(A)
                if k_in == 0 or k_in > lam_i + 1:
                    continue
                W = sum(consumed) + sum(A)
                for B, outs_rest, ways_b in _sub_multisets(outs):
                    R = W - sum(B)
                    if R < 0 or (i == L - 1 and R > 0):
                        continue
                    room = lam_i + 2 - k_in - len(B)
                    if room < 0:
                        continue
                    part_iter = [()] if R == 0 else partitions_bounded(R, max_len=min(room, cap[i + 1] - n_rest))
                    for parts in part_iter:
                        val = k_in + len(B) + len(parts)
                        if (lam_i + 2 - val) % 2 or (not parts and not B):
                            continue
                        gv = (lam_i + 2 - val) // 2
                        m = vertex_multiplicity(tuple(consumed) + A, B + parts, gv)
                        if not m:
                            continue
                        if mask[i] and val % 2 == 0:
                            m = -m
                        new_open = tuple(sorted(rest + tuple(Counter(parts).items())))
                        sub = sweep(i + 1, new_open, ins_rest, outs_rest)
                        if sub:
                            total += ways_a * ways_b * edge_factor * m * sub
        memo[key] = total
        return total

    return sweep(0, (), tuple(sorted(plus)), tuple(sorted(minus)))


def _subsequences(n: int):
    for r in range(n + 1):
        yield from combinations(range(n), r)


@lru_cache(maxsize=None)
def _connected_core(x: tuple[int, ...], lam: tuple[int, ...], mask: tuple[bool, ...]) -> Fraction:
    plus = tuple(e for e in x if e > 0)
    minus = tuple(-e for e in x if e < 0)
    if not plus or not minus:
        return Fraction(0)
    total = _disconnected_core(tuple(sorted(plus)), tuple(sorted(minus)), lam, mask)
    # subtract disconnected covers: the component holding end 0 takes ends
    # {0} + S and vertex positions P; the rest is arbitrary
    others = list(range(1, len(x)))
    L = len(lam)
    for r in range(len(others) + 1):
        for S in combinations(others, r):
            block = (0,) + S
            if sum(x[j] for j in block) != 0:
                continue
            comp_x = tuple(x[j] for j in block)
            rest_x = tuple(x[j] for j in others if j not in S)
            for P in _subsequences(L):
                if len(block) == len(x) and len(P) == L:
                    continue
                rest_pos = [k for k in range(L) if k not in P]
                if not rest_x and rest_pos:
                    continue
                comp = _connected_core(comp_x, tuple(lam[k] for k in P), tuple(mask[k] for k in P))
                if not comp:
                    continue
                rest_lam = tuple(lam[k] for k in rest_pos)
                rest_mask = tuple(mask[k] for k in rest_pos)
                if rest_x:
                    rp = tuple(sorted(e for e in rest_x if e > 0))
                    rm = tuple(sorted(-e for e in rest_x if e < 0))
                    rest_val = _disconnected_core(rp, rm, rest_lam, rest_mask)
                else:
                    rest_val = Fraction(1)
                total -= comp * rest_val
    return total


def core_value(x, lam: Sequence[int], mask: Sequence[bool] | None = None, connected: bool = True) -> Fraction:
    """Labelled-end sum without the 1/l(lambda)! factor (see module docstring)."""
    x = tuple(Profile(tuple(x)).entries)
    lam = tuple(lam)
    mask = (False,) * len(lam) if mask is None else tuple(bool(m) for m in mask)
    if len(mask) != len(lam):
        raise ValueError("mask length differs from lambda")
    if any(p < 1 for p in lam):
        raise ValueError("lambda parts must be positive")
    if connected:
        return _connected_core(x, lam, mask)
    plus = tuple(sorted(e for e in x if e > 0))
    minus = tuple(sorted(-e for e in x if e < 0))
    return _disconnected_core(plus, minus, lam, mask)


def _check_lambda(g: int, x: Profile, lam) -> None:
    if sum(lam) != x.b(g):
        raise ValueError(f"|lambda| = {sum(lam)} but 2g-2+n = {x.b(g)}")


def _end_symmetry(x: Profile) -> int:
    return multiset_aut(x.plus) * multiset_aut(x.minus)


def vec_h(g: int, x, lam: Sequence[int], variant=MONOTONE, connected: bool = True, labeled_ends: bool = False) -> Fraction:
    """Slice of the (strictly) monotone double Hurwitz number for an ordered lambda."""
    x = x if isinstance(x, Profile) else Profile(tuple(x))
    variant = _as_variant(variant)
    if variant.kind == "mixed":
        raise ValueError("use mixed_slice for mixed numbers")
    lam = tuple(lam)
    _check_lambda(g, x, lam)
    mask = _strict_mask(variant, len(lam))
    value = core_value(x.entries, lam, mask, connected) / factorial(len(lam))
    return value if labeled_ends else value / _end_symmetry(x)


def h_slice(g: int, x, lam_unordered: Sequence[int], variant=MONOTONE, connected: bool = True, labeled_ends: bool = False) -> Fraction:
    """Sum of vec_h over the distinct orderings of an unordered partition."""
    if not lam_unordered:
        return vec_h(g, x, (), variant, connected, labeled_ends)
    return sum(
        (vec_h(g, x, lam, variant, connected, labeled_ends) for lam in orderings_of(sorted(lam_unordered, reverse=True))),
        Fraction(0),
    )


def h_total(g: int, x, variant=MONOTONE, connected: bool = True, labeled_ends: bool = False) -> Fraction:
    x = x if isinstance(x, Profile) else Profile(tuple(x))
    b = x.b(g)
    if b < 0:
        raise ValueError("2g-2+n must be non-negative")
    return sum((h_slice(g, x, lam, variant, connected, labeled_ends) for lam in unordered_partitions(b)), Fraction(0))


# --------------------------------------------------------------------------
# mixed numbers

BLOCK_ORDER = ("strict", "weak", "usual")


def mixed_layout(lam1: Sequence[int], lam2: Sequence[int], n_usual: int, order: Sequence[str] = BLOCK_ORDER):
    """Concatenate the three blocks in ``order``; return (lambda, strict mask)."""
    blocks = {"strict": tuple(lam1), "weak": tuple(lam2), "usual": (1,) * n_usual}
    if sorted(order) != sorted(BLOCK_ORDER):
        raise ValueError(f"block order must be a permutation of {BLOCK_ORDER}")
    lam: tuple[int, ...] = ()
    mask: tuple[bool, ...] = ()
    for name in order:
        lam += blocks[name]
        mask += (name == "strict",) * len(blocks[name])
    return lam, mask


def mixed_slice(
    g: int,
    x,
    lam1: Sequence[int],
    lam2: Sequence[int],
    connected: bool = True,
    labeled_ends: bool = False,
    order: Sequence[str] = BLOCK_ORDER,
) -> Fraction:
    """Slice of the mixed number: ``lam1`` strict block, ``lam2`` weak block, then ones.

    ``p = |lam1|`` and ``q = |lam2|``; the remaining ``b - p - q`` vertices are
    usual trivalent vertices.  The slice is normalised by
    ``1/(l(lam1)! l(lam2)!)``; usual vertices carry no factorial.
    """
    x = x if isinstance(x, Profile) else Profile(tuple(x))
    lam1, lam2 = tuple(lam1), tuple(lam2)
    if any(p < 1 for p in lam1 + lam2):
        raise ValueError("blocks must consist of positive parts")
    b = x.b(g)
    r = b - sum(lam1) - sum(lam2)
    if r < 0:
        raise ValueError(f"p + q = {sum(lam1) + sum(lam2)} exceeds b = {b}")
    lam, mask = mixed_layout(lam1, lam2, r, order)
    value = core_value(x.entries, lam, mask, connected) / (factorial(len(lam1)) * factorial(len(lam2)))
    return value if labeled_ends else value / _end_symmetry(x)


def mixed_total(g: int, x, p: int, q: int, connected: bool = True) -> Fraction:
    """Sum of mixed slices over all compositions of p and q."""
    lam1s = ordered_partitions(p) if p else [()]
    lam2s = ordered_partitions(q) if q else [()]
    return sum((mixed_slice(g, x, a, b, connected) for a in lam1s for b in lam2s), Fraction(0))


# --------------------------------------------------------------------------
# export


def export_cover(c: CombinatorialCover) -> str:
    """Plain-text graph description: one vertex or edge per line."""
    lines = [f"# profile {','.join(map(str, c.profile))} lambda {','.join(map(str, c.lam))}"]
    for i, gv in enumerate(c.genera):
        lines.append(f"vertex v{i} genus={gv} lambda={c.lam[i]}")
    for t, h, w in c.edges:
        lines.append(f"edge v{t} -> v{h} weight={w}")
    for j, (v, w) in enumerate(c.ends):
        if v is None:
            continue
        if c.profile[j] > 0:
            lines.append(f"edge in{j} -> v{v} weight={w}")
        else:
            lines.append(f"edge v{v} -> out{j} weight={w}")
    for a, b in c.straight:
        lines.append(f"edge in{a} -> out{b} weight={c.profile[a]}")
    return "\n".join(lines) + "\n"
