"""Permutation trinomials over F_{q^3}: field arithmetic, condition checks,
symbolic verification and censuses."""

__version__ = "0.1.0"
