"""Cut-and-join along the last vertex.

Removing the last vertex ``w`` of a cover splits the rest into components;
each is a smaller cover whose new outgoing ends ``gamma^i`` were the edges
into ``w``.  :func:`recursion_rhs` assembles a slice from the smaller slices
with the genus bookkeeping that actually holds, namely

    |lambda^i| = 2 g_i - 2 + l(mu^i) + l(nu^i) + l(gamma^i)
    g(w)       = (lambda_k + 2 - |I| - sum l(gamma^i)) / 2

and the strict sign ``(-1)^(1 + val(w))``.  :func:`printed_recursion_rhs`
is the commonly printed variant: a 1/k prefactor, decompositions taken up to
order, vertex genus ``(lambda_k + 2 - |I| + l(gamma))/2``, strict sign
``(-1)^(l(gamma) + l(nu_I))`` and the genus condition
``sum g_i = g - 1 + (lambda_k + 2 - n)/2 + (3/2) sum l(gamma^i)``.  It does
not reproduce the slices and is kept so that the two can be compared.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod
from typing import Sequence

from .combinatorics import Profile, multiset_aut, partitions_bounded, set_partitions
from .exactmath import one_point_coefficient, s_series, series_invert, series_mul
from .tropical import MONOTONE, BLOCK_ORDER, _as_variant, core_value, mixed_layout, vec_h, vertex_multiplicity

__all__ = [
    "CUT_TYPES",
    "recursion_rhs",
    "printed_recursion_rhs",
    "mixed_recursion_rhs",
    "core_recursion",
]

CUT_TYPES = ("strict_vertex", "weak_vertex", "usual_vertex")


def _half(twice: int) -> int | None:
    if twice < 0 or twice % 2:
        return None
    return twice // 2


def core_recursion(x: Sequence[int], lam: Sequence[int], mask: Sequence[bool]) -> Fraction:
    """Labelled-end core of a connected slice, rebuilt from its last vertex.

    Same normalisation as :func:`hurwitz.tropical.core_value`.
    """
    x = tuple(x)
    lam, mask = tuple(lam), tuple(mask)
    k = len(lam)
    if k == 0:
        raise ValueError("the recursion needs at least one vertex")
    lam_k, front = lam[-1], lam[:-1]
    ins = [i for i, e in enumerate(x) if e > 0]
    outs = [i for i, e in enumerate(x) if e < 0]
    total = Fraction(0)
    for r in range(1, len(outs) + 1):
        for I in combinations(outs, r):
            nu_I = tuple(-x[i] for i in I)
            rest = [i for i in outs if i not in I]
            for blocks in set_partitions(ins):
                n = len(blocks)
                for owner in product(range(n), repeat=len(rest)):
                    nus = [[j for j, o in zip(rest, owner) if o == i] for i in range(n)]
                    deficits = [sum(x[a] for a in blocks[i]) + sum(x[j] for j in nus[i]) for i in range(n)]
                    if min(deficits) < 1:
                        continue
                    total += _sum_over_gammas(x, blocks, nus, deficits, nu_I, lam_k, front, mask)
    return total


def _sum_over_gammas(x, blocks, nus, deficits, nu_I, lam_k, front, mask):
    n = len(blocks)
    total = Fraction(0)
    strict_w = mask[-1]
    for gammas in product(*(list(partitions_bounded(d)) for d in deficits)):
        n_gamma = sum(len(gm) for gm in gammas)
        gw = _half(lam_k + 2 - len(nu_I) - n_gamma)
        if gw is None:
            continue
        all_gamma = tuple(v for gm in gammas for v in gm)
        m_w = vertex_multiplicity(all_gamma, nu_I, gw)
        if strict_w and (n_gamma + len(nu_I)) % 2 == 0:
            m_w = -m_w
        edge_factor = prod(all_gamma) * m_w
        for gm in gammas:
            edge_factor /= multiset_aut(gm)
        profiles = [
            tuple(x[a] for a in blocks[i]) + tuple(x[j] for j in nus[i]) + tuple(-v for v in gammas[i])
            for i in range(n)
        ]
        for where in product(range(n), repeat=len(front)):
            term = edge_factor
            for i in range(n):
                pos = [p for p, o in enumerate(where) if o == i]
                lam_i = tuple(front[p] for p in pos)
                if _half(sum(lam_i) + 2 - len(profiles[i])) is None:
                    term = 0
                    break
                term *= core_value(profiles[i], lam_i, tuple(mask[p] for p in pos), True)
                if not term:
                    break
            total += term
    return total


def recursion_rhs(g: int, x, lam: Sequence[int], variant=MONOTONE, labeled_ends: bool = False) -> Fraction:
    """The ordered slice vec_h(g, x, lam) computed by cutting off the last vertex."""
    x = x if isinstance(x, Profile) else Profile(tuple(x))
    variant = _as_variant(variant)
    if variant.kind not in ("monotone", "strict"):
        raise ValueError("recursion_rhs covers the monotone and strict variants; use mixed_recursion_rhs")
    lam = tuple(lam)
    if sum(lam) != x.b(g):
        raise ValueError(f"|lambda| = {sum(lam)} but 2g-2+n = {x.b(g)}")
    mask = (variant.kind == "strict",) * len(lam)
    value = core_recursion(x.entries, lam, mask) / factorial(len(lam))
    if labeled_ends:
        return value
    return value / (multiset_aut(x.plus) * multiset_aut(x.minus))


def mixed_recursion_rhs(
    g: int,
    x,
    lam1: Sequence[int],
    lam2: Sequence[int],
    cut_type: str,
    labeled_ends: bool = False,
) -> Fraction:
    """Mixed slice with the last vertex taken from the block named by ``cut_type``."""
    x = x if isinstance(x, Profile) else Profile(tuple(x))
    if cut_type not in CUT_TYPES:
        raise ValueError(f"cut_type must be one of {CUT_TYPES}")
    lam1, lam2 = tuple(lam1), tuple(lam2)
    r = x.b(g) - sum(lam1) - sum(lam2)
    if r < 0:
        raise ValueError("p + q exceeds b")
    block = cut_type.split("_")[0]
    size = {"strict": len(lam1), "weak": len(lam2), "usual": r}[block]
    if size == 0:
        raise ValueError(f"cannot cut along a {block} vertex: that block is empty")
    order = tuple(b for b in BLOCK_ORDER if b != block) + (block,)
    lam, mask = mixed_layout(lam1, lam2, r, order)
    value = core_recursion(x.entries, lam, mask) / (factorial(len(lam1)) * factorial(len(lam2)))
    if labeled_ends:
        return value
    return value / (multiset_aut(x.plus) * multiset_aut(x.minus))


# --------------------------------------------------------------------------
# the printed variant, term by term


def _vertex_series(weights: Sequence[int], genus: int) -> Fraction:
    """sum_{g1+g2=genus} c(g2) [z^{2 g1}] prod S(y z) / S(z)."""
    s = s_series(2 * genus)
    num = series_invert(s)
    for y in weights:
        num = series_mul(num, s.scale_variable(y))
    return sum((one_point_coefficient(genus - g1) * num.coefficient(2 * g1) for g1 in range(genus + 1)), Fraction(0))


def _multiset_splits(values: Sequence[int], n: int, nonempty: bool):
    """Distinct decompositions of a multiset into n labelled parts (callers remove reorderings)."""
    seen = set()
    for owner in product(range(n), repeat=len(values)):
        parts = [tuple(sorted(v for v, o in zip(values, owner) if o == i)) for i in range(n)]
        if nonempty and any(not p for p in parts):
            continue
        if tuple(parts) in seen:
            continue
        seen.add(tuple(parts))
        yield parts


def printed_recursion_rhs(g: int, x, lam: Sequence[int], variant=MONOTONE) -> Fraction:
    """Right-hand side of the printed variant, with l(gamma) in the genus condition."""
    x = x if isinstance(x, Profile) else Profile(tuple(x))
    variant = _as_variant(variant)
    strict = variant.kind == "strict"
    mu = tuple(sorted(x.plus, reverse=True))
    nu = tuple(sorted(x.minus, reverse=True))
    lam = tuple(lam)
    k = len(lam)
    lam_k, front = lam[-1], lam[:-1]
    total = Fraction(0)
    seen_terms = set()
    for r in range(0, len(nu) + 1):
        for I in combinations(range(len(nu)), r):
            nu_I = tuple(nu[i] for i in I)
            rest = [nu[i] for i in range(len(nu)) if i not in I]
            for n in range(1, len(mu) + 1):
                for mus in _multiset_splits(mu, n, True):
                    for owner in product(range(n), repeat=len(rest)):
                        nus = [tuple(sorted(v for v, o in zip(rest, owner) if o == i)) for i in range(n)]
                        deficits = [sum(mus[i]) - sum(nus[i]) for i in range(n)]
                        if min(deficits) < 1:
                            continue
                        for gammas in product(*(list(partitions_bounded(d)) for d in deficits)):
                            for where in product(range(n), repeat=len(front)):
                                lams = [tuple(front[p] for p, o in enumerate(where) if o == i) for i in range(n)]
                                key = (I, tuple(sorted(zip(mus, nus, lams, gammas))))
                                if key in seen_terms:
                                    continue
                                seen_terms.add(key)
                                total += _printed_term(g, mus, nus, lams, gammas, nu_I, lam_k, k, strict)
    return total


def _printed_term(g, mus, nus, lams, gammas, nu_I, lam_k, k, strict) -> Fraction:
    n = len(mus)
    n_gamma = sum(len(gm) for gm in gammas)
    genera = []
    for mu_i, nu_i, lam_i, gm in zip(mus, nus, lams, gammas):
        gi = _half(sum(lam_i) + 2 - len(mu_i) - len(nu_i) - len(gm))
        if gi is None:
            return Fraction(0)
        genera.append(gi)
    # sum g_i = g - 1 + (lambda_k + 2 - n)/2 + (3/2) sum l(gamma^i)
    if 2 * sum(genera) != 2 * (g - 1) + (lam_k + 2 - n) + 3 * n_gamma:
        return Fraction(0)
    gv = _half(lam_k + 2 - len(nu_I) + n_gamma)
    if gv is None:
        return Fraction(0)
    term = Fraction(1, k)
    for gi, mu_i, nu_i, lam_i, gm in zip(genera, mus, nus, lams, gammas):
        prof = Profile.from_parts(mu_i, nu_i + gm)
        term *= vec_h(gi, prof, lam_i, "strict" if strict else "monotone", True)
        if not term:
            return Fraction(0)
    all_gamma = tuple(v for gm in gammas for v in gm)
    term /= multiset_aut(nu_I)
    term *= prod(all_gamma)
    term *= _vertex_series(all_gamma + nu_I, gv) / (multiset_aut(all_gamma) * multiset_aut(nu_I))
    if strict and (n_gamma + len(nu_I)) % 2:
        term = -term
    return term
