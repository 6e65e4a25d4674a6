"""Exact Laplacian and signless Laplacian coefficients of graphs, bicyclic
extremal families, coefficient-decreasing transforms and incidence energy."""

from __future__ import annotations

from .canon import are_isomorphic, canonical_form, graph_from_code
from .enumerator import generate_all_bicyclic, generate_all_connected, verify_extremal
from .families import FAMILIES, FamilySpec, build_family, closed_form_poly, difference_identity, extremal_graph
from .graph import Graph, ParityClass, classify_bicyclic, parse_edgelist, read_edgelist, structural_profile
from .oracle import laplacian_coeffs_oracle, signless_coeffs_oracle
from .poly import CoeffVector, IntPoly, compare_dominance, laplacian_coeffs, signless_charpoly, signless_coeffs
from .spectral import cubic_root_bounds_check, ie_threshold_scan, incidence_energy, q_spectrum
from .transforms import contract_to_pendant, reduce_to_extremal, relocate_pendants, shorten_cycle, sigma

__version__ = "0.1.0"

__all__ = [
    "CoeffVector", "FAMILIES", "FamilySpec", "Graph", "IntPoly", "ParityClass",
    "are_isomorphic", "build_family", "canonical_form", "classify_bicyclic", "closed_form_poly",
    "compare_dominance", "contract_to_pendant", "cubic_root_bounds_check", "difference_identity",
    "extremal_graph", "generate_all_bicyclic", "generate_all_connected", "graph_from_code",
    "ie_threshold_scan", "incidence_energy", "laplacian_coeffs", "laplacian_coeffs_oracle",
    "parse_edgelist", "q_spectrum", "read_edgelist", "reduce_to_extremal", "relocate_pendants",
    "shorten_cycle", "sigma", "signless_charpoly", "signless_coeffs", "signless_coeffs_oracle",
    "structural_profile", "verify_extremal",
]
