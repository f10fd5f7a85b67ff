"""Δ-restless temporal paths: exact and parameterized solvers, reductions and an oracle."""

from .core import (GuardError, ParseError, Query, RestlessPath, TemporalGraph, direct_edge_witness,
                   fig1, format_witness, low_degree_reduce, pad_delta, parse, parse_witness, serialize,
                   underlying_graph, validate_witness)
from .expansion import build_expansion, special_case_solve, walk_reachable
from .fes_solver import fes_decompose, fes_solve
from .oracle import brute_force, brute_force_walk
from .short_path import solve_short
from .tfvs import compute_tfvs, is_tfvs
from .tfvs_solver import tfvs_solve

__all__ = [
    "GuardError", "ParseError", "Query", "RestlessPath", "TemporalGraph", "brute_force",
    "brute_force_walk", "build_expansion", "compute_tfvs", "direct_edge_witness", "fes_decompose",
    "fes_solve", "fig1", "format_witness", "is_tfvs", "low_degree_reduce", "pad_delta", "parse",
    "parse_witness", "serialize", "solve_short", "special_case_solve", "tfvs_solve",
    "underlying_graph", "validate_witness", "walk_reachable",
]
