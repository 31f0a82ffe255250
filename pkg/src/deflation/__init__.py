"""Two-qubit circuit rewrites that trade controlled-U gates for CNOTs.

The package evaluates every rewrite against a direct 4x4 matrix product, so
results are exact up to floating-point rounding, global phase included.
"""
from .breach import BreachPattern, close_breach
from .circuit import (
    Circuit, Cnot, ControlledU, Cz, GlobalPhase, OneQubit, Rotation,
    canonicalize, count_kind, dumps, entangling_count, evaluate, loads, to_cnot,
    to_cz,
)
from .csd import CsdCircuitIntermediates, CsdFactors, csd_2q, csd_intermediates, csd_to_circuit, synth_3cnot
from .deflate import (
    DeflationAngles, DeflationInput, build_lhs, build_rhs, deflate_core,
    deflate_opposite_side, deflate_same_side, opposite_side_circuit,
    same_side_circuit,
)
from .tables import ConjugationKind, computed_conjugation, conjugate_pauli, format_table
from .verify import Report, run_suite

__version__ = "0.1.0"

__all__ = [
    "BreachPattern", "close_breach",
    "Circuit", "Cnot", "ControlledU", "Cz", "GlobalPhase", "OneQubit", "Rotation",
    "canonicalize", "count_kind", "dumps", "entangling_count", "evaluate", "loads",
    "to_cnot", "to_cz",
    "CsdCircuitIntermediates", "CsdFactors", "csd_2q", "csd_intermediates",
    "csd_to_circuit", "synth_3cnot",
    "DeflationAngles", "DeflationInput", "build_lhs", "build_rhs", "deflate_core",
    "deflate_opposite_side", "deflate_same_side", "opposite_side_circuit",
    "same_side_circuit",
    "ConjugationKind", "computed_conjugation", "conjugate_pauli", "format_table",
    "Report", "run_suite",
]
