"""Exact monotone, strictly monotone and mixed double Hurwitz numbers.

Two independent engines: brute-force transposition factorizations in S_d
(:mod:`hurwitz.symgroup`) and tropical covers with Gromov-Witten vertex
weights (:mod:`hurwitz.tropical`).  All arithmetic is exact.
"""

from .combinatorics import Profile
from .exactmath import format_fraction, parse_fraction
from .polynomiality import chamber_signature, fit_chamber_polynomial, wall_crossing_direct, wall_crossing_formula
from .recursion import mixed_recursion_rhs, printed_recursion_rhs, recursion_rhs
from .symgroup import FactorizationQuery, count_factorizations
from .tropical import h_slice, h_total, mixed_slice, mixed_total, vec_h

__version__ = "0.1.0"

__all__ = [
    "Profile",
    "FactorizationQuery",
    "count_factorizations",
    "vec_h",
    "h_slice",
    "h_total",
    "mixed_slice",
    "mixed_total",
    "chamber_signature",
    "fit_chamber_polynomial",
    "wall_crossing_direct",
    "wall_crossing_formula",
    "recursion_rhs",
    "printed_recursion_rhs",
    "mixed_recursion_rhs",
    "format_fraction",
    "parse_fraction",
]
