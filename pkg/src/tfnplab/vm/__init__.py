"""Budgeted verifier bytecode, the program-to-circuit compiler, and the
self-delimiting tuple codec."""

from .asm import program_from_asm, program_to_asm
from .build import DirectView, InputView, Label, ProgramBuilder, WindowView, inline_program
from .compile import compile_to_circuit
from .isa import (
    ACCEPT,
    MASK,
    REJECT,
    BudgetExceeded,
    OracleCall,
    PolyBound,
    RunResult,
    VerifierProgram,
    VmError,
    bits_to_int,
    int_to_bits,
    run,
)
from .pack import MALFORMED, decode_tuple, encode_tuple, encoded_length

__all__ = [
    "program_from_asm",
    "program_to_asm",
    "DirectView",
    "InputView",
    "Label",
    "ProgramBuilder",
    "WindowView",
    "inline_program",
    "compile_to_circuit",
    "ACCEPT",
    "MASK",
    "REJECT",
    "BudgetExceeded",
    "OracleCall",
    "PolyBound",
    "RunResult",
    "VerifierProgram",
    "VmError",
    "bits_to_int",
    "int_to_bits",
    "run",
    "MALFORMED",
    "decode_tuple",
    "encode_tuple",
    "encoded_length",
]
