"""Finite-domain constraint problems with necessity-valued constraints.

Each constraint carries a necessity degree in [0, 1] saying how imperative
it is.  A complete labeling is compatible to degree 1 minus the highest
necessity among the constraints it violates; solving means finding the
labelings that maximize that degree.
"""

from ._core import (
    PcspError,
    Problem,
    bound_b,
    builtin_menu,
    enforce_ac,
    enumerate_best,
    forward_check,
    parse_problem,
    partial_bound,
    pi_star,
    random_problem,
    solve,
    write_problem,
)

__all__ = [
    "PcspError",
    "Problem",
    "bound_b",
    "builtin_menu",
    "enforce_ac",
    "enumerate_best",
    "forward_check",
    "parse_problem",
    "partial_bound",
    "pi_star",
    "random_problem",
    "solve",
    "write_problem",
]
