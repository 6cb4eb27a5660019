"""Permutation and graph statistics."""

from .permutations import (
    eulerian_monotone_check,
    eulerian_table,
    eulerian_tp_check,
    odd_length,
    odd_length_gf,
    odd_length_gf_bruteforce,
    verify_Ln,
)
from .graphs import (
    Graph,
    acyclic_count,
    acyclic_count_bruteforce,
    canonical_form,
    chromatic_poly,
    enumerate_graphs,
    tau_poly,
    tau_real_rooted_scan,
    tau_via_partitions,
)

__all__ = [
    "eulerian_monotone_check", "eulerian_table", "eulerian_tp_check", "odd_length", "odd_length_gf",
    "odd_length_gf_bruteforce", "verify_Ln", "Graph", "acyclic_count", "acyclic_count_bruteforce",
    "canonical_form", "chromatic_poly", "enumerate_graphs", "tau_poly", "tau_real_rooted_scan",
    "tau_via_partitions",
]
