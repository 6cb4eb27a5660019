"""Exact analysis of coefficient sequences, matrices and face-number vectors."""

from .sequences import (
    GammaVector,
    gamma_vector,
    is_log_concave,
    is_symmetric,
    is_ultra_log_concave,
    is_unimodal,
)
from .sturm import count_real_roots, real_rooted
from .matrix import (
    ExactMatrix,
    brute_force_tn,
    is_totally_nonnegative,
    minor,
    neville_tn,
    toeplitz_matrix,
    toeplitz_tp_check,
)
from .hvectors import (
    is_m_sequence,
    is_polytopal_h_vector,
    kruskal_katona_check,
    macaulay_bound,
    scan_kw,
    scan_scphtp,
)

__all__ = [
    "GammaVector", "gamma_vector", "is_log_concave", "is_symmetric", "is_ultra_log_concave",
    "is_unimodal", "count_real_roots", "real_rooted", "ExactMatrix", "brute_force_tn",
    "is_totally_nonnegative", "minor", "neville_tn", "toeplitz_matrix", "toeplitz_tp_check",
    "is_m_sequence", "is_polytopal_h_vector", "kruskal_katona_check", "macaulay_bound",
    "scan_kw", "scan_scphtp",
]
