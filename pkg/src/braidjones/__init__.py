"""Exact and sampled Jones/HOMFLYPT invariants of braid closures at roots of unity."""

from .braid import BraidParseError, BraidWord, ClosureKind, ClosureSpec, TangleWord, format_braid, parse_braid
from .compiler import QuantumCircuit, approximate_gate, compile_circuit, parse_circuit, verify_compiled
from .invariants import (
    homflypt_trace_closure,
    jones_closure,
    jones_generalized_closure,
    jones_plat,
    kauffman_oracle,
    markov_trace,
    normalized_trace,
)
from .rep import apply_braid, braid_matrix, irrep_block
from .sampler import Route, estimate_homflypt, estimate_jones_closure
from .young import RootParams, Tableau, YoungDiagram, enumerate_tableaux, quantum_integer

__version__ = "0.1.0"

__all__ = [
    "BraidParseError",
    "BraidWord",
    "ClosureKind",
    "ClosureSpec",
    "TangleWord",
    "format_braid",
    "parse_braid",
    "QuantumCircuit",
    "approximate_gate",
    "compile_circuit",
    "parse_circuit",
    "verify_compiled",
    "homflypt_trace_closure",
    "jones_closure",
    "jones_generalized_closure",
    "jones_plat",
    "kauffman_oracle",
    "markov_trace",
    "normalized_trace",
    "apply_braid",
    "braid_matrix",
    "irrep_block",
    "Route",
    "estimate_homflypt",
    "estimate_jones_closure",
    "RootParams",
    "Tableau",
    "YoungDiagram",
    "enumerate_tableaux",
    "quantum_integer",
]
