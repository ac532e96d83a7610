"""Propositional engine: formulas, CNF/DIMACS, Tseitin, DPLL, circuits."""

from .cnf import CNF, DimacsError, from_dimacs, to_dimacs
from .circuit import (
    BoolCircuit,
    CircuitBuilder,
    CircuitError,
    GateCapExceeded,
    OracleRecord,
    Transcript,
    all_input_lanes,
    circuit_from_bits,
    circuit_from_lines,
    circuit_to_bits,
    circuit_to_lines,
    compose_circuits,
    eval_circuit,
    eval_circuit_vector,
    eval_oracle_circuit,
)
from .formula import (
    PropFormula,
    all_assignments,
    brute_force_satisfiable,
    conj,
    conj_all,
    const,
    disj,
    is_tautology,
    neg,
    var,
)
from .text import PropParseError, cnf_to_formula, parse_prop
from .solver import SAT, UNSAT, SatResult, all_models, brute_force_solve, sat_solve, verify_model
from .tseitin import TseitinResult, tseitin, tseitin_circuit

__all__ = [
    "CNF",
    "DimacsError",
    "from_dimacs",
    "to_dimacs",
    "BoolCircuit",
    "CircuitBuilder",
    "CircuitError",
    "GateCapExceeded",
    "OracleRecord",
    "Transcript",
    "all_input_lanes",
    "circuit_from_bits",
    "circuit_from_lines",
    "circuit_to_bits",
    "circuit_to_lines",
    "compose_circuits",
    "eval_circuit",
    "eval_circuit_vector",
    "eval_oracle_circuit",
    "PropFormula",
    "all_assignments",
    "brute_force_satisfiable",
    "conj",
    "conj_all",
    "const",
    "disj",
    "is_tautology",
    "neg",
    "var",
    "SAT",
    "UNSAT",
    "SatResult",
    "all_models",
    "brute_force_solve",
    "sat_solve",
    "verify_model",
    "TseitinResult",
    "tseitin",
    "tseitin_circuit",
    "PropParseError",
    "cnf_to_formula",
    "parse_prop",
]
