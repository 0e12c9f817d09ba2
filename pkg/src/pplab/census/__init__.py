"""Censuses of coefficient pairs, brute-force permutation checks, exact
bound comparisons and curve point counts."""

from .bounds import FAMILY_BOUNDS, LowerBound, Surd, Window, hasse_weil_window, lower_bound, surd_sign
from .bruteforce import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    CubicArrays,
    image_size,
    is_permutation_bruteforce,
    preimages,
    trinomial_values,
)
from .curves import PROPS, CurveCountReport, curve_point_count, p2_count_naive
from .run import CensusReport, CensusRow, candidate_pairs, default_workers, run_census

__all__ = [
    "FAMILY_BOUNDS", "LowerBound", "Surd", "Window", "hasse_weil_window", "lower_bound", "surd_sign",
    "DEFAULT_BUDGET", "BudgetExceeded", "CubicArrays", "image_size", "is_permutation_bruteforce",
    "preimages", "trinomial_values",
    "PROPS", "CurveCountReport", "curve_point_count", "p2_count_naive",
    "CensusReport", "CensusRow", "candidate_pairs", "default_workers", "run_census",
]
