"""Total polynomial search problems: a witness-length bound plus a
budgeted verifier program, with optional host-side reference hooks used
by tests (brute-force oracle, witness enumerator).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator

from ..vm.asm import program_from_asm, program_to_asm
from ..vm.isa import PolyBound, VerifierProgram, run


class SearchSpaceTooLarge(RuntimeError):
    pass


class TotalityViolation(AssertionError):
    """Exhaustive sweep finished with no witness: the problem definition is broken."""

    def __init__(self, problem: str, instance: str):
        super().__init__(f"{problem} has no witness for instance {instance!r}")
        self.instance = instance


@dataclass(frozen=True)
class TFNPProblem:
    name: str
    bound: PolyBound  # witness length bound p(|x|)
    verifier: VerifierProgram  # arity 2: (instance, candidate)
    # host-side hooks for tests; not part of the problem semantics
    reference_solver: Callable[[str], str] | None = field(default=None, compare=False)
    witness_enumerator: Callable[[str], Iterable[str]] | None = field(
        default=None, compare=False
    )

    def __post_init__(self):
        if self.verifier.arity != 2:
            raise ValueError("a search-problem verifier takes (instance, candidate)")


def verify_solution(problem: TFNPProblem, x: str, y: str) -> bool:
    """True iff |y| <= p(|x|) and the verifier accepts (x, y)."""
    if len(y) > problem.bound(len(x)):
        return False
    return run(problem.verifier, (x, y)).accepted


def length_lex_strings(max_len: int) -> Iterator[str]:
    """All bit strings by length then lexicographic order."""
    for length in range(max_len + 1):
        for v in range(1 << length):
            yield format(v, f"0{length}b") if length else ""


def solve_brute(
    problem: TFNPProblem, x: str, sweep_limit: int = 1 << 20
) -> str:
    """Least witness in length-lex order, by exhaustive sweep.

    The independent test oracle: it never consults reference hooks.
    Guarded: raises SearchSpaceTooLarge when the witness space exceeds
    sweep_limit candidates, TotalityViolation when the full sweep finds
    nothing.
    """
    max_len = problem.bound(len(x))
    space = (1 << (max_len + 1)) - 1
    if space > sweep_limit:
        raise SearchSpaceTooLarge(
            f"{problem.name}: 2^{max_len + 1} candidates exceeds the sweep limit"
        )
    for y in length_lex_strings(max_len):
        if run(problem.verifier, (x, y)).accepted:
            return y
    raise TotalityViolation(problem.name, x)


def enumerate_witnesses(
    problem: TFNPProblem, x: str, sweep_limit: int = 1 << 20
) -> Iterator[str]:
    """Every valid witness: the problem's enumerator hook when present,
    otherwise a guarded exhaustive sweep."""
    if problem.witness_enumerator is not None:
        for y in problem.witness_enumerator(x):
            yield y
        return
    max_len = problem.bound(len(x))
    space = (1 << (max_len + 1)) - 1
    if space > sweep_limit:
        raise SearchSpaceTooLarge(
            f"{problem.name}: cannot enumerate 2^{max_len + 1} candidates"
        )
    for y in length_lex_strings(max_len):
        if run(problem.verifier, (x, y)).accepted:
            yield y


def solve(problem: TFNPProblem, x: str, sweep_limit: int = 1 << 20) -> str:
    """A witness: the reference solver when present, else the brute sweep."""
    if problem.reference_solver is not None:
        return problem.reference_solver(x)
    return solve_brute(problem, x, sweep_limit)


# --- serialization: JSON record referencing a bytecode file ---------------

def problem_to_files(problem: TFNPProblem, directory: str | Path) -> Path:
    """Write <name>.json plus <name>.vmasm; returns the json path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    asm_name = f"{problem.name}.vmasm"
    (directory / asm_name).write_text(program_to_asm(problem.verifier))
    record = {
        "name": problem.name,
        "bound": [problem.bound.c, problem.bound.k, problem.bound.d],
        "verifier": asm_name,
    }
    path = directory / f"{problem.name}.json"
    path.write_text(json.dumps(record, indent=2) + "\n")
    return path


def problem_from_files(json_path: str | Path) -> TFNPProblem:
    """Load a problem record; reference hooks are re-attached by name for
    the built-in problems (see tfnplab.tfnp.builtins)."""
    json_path = Path(json_path)
    record = json.loads(json_path.read_text())
    verifier = program_from_asm((json_path.parent / record["verifier"]).read_text())
    c, k, d = record["bound"]
    problem = TFNPProblem(record["name"], PolyBound(c, k, d), verifier)
    from .builtins import attach_builtin_hooks

    return attach_builtin_hooks(problem)
