"""Exact Coxeter-group combinatorics: Bruhat order, parabolic KL and R polynomials,
the complete cd-index, and a positivity lab for the surrounding conjectures."""

from .coxeter import CoxeterMatrix, CoxeterSystem, Element, Reflection, build_system, parse_subset
from .intpoly import IntPoly
from .quadext import QuadExt
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "CoxeterMatrix", "CoxeterSystem", "Element", "Reflection", "build_system", "parse_subset",
    "IntPoly", "QuadExt", "Report",
]
