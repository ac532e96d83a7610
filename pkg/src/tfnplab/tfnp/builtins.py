"""Named built-in problems, for the CLI/service and for re-attaching
host-side reference hooks to problems loaded from files."""

from __future__ import annotations

from typing import Callable

from .examples import PHP_SENTENCE, copy_problem, order_sentence, xorflip_problem
from .problem import TFNPProblem
from .problems import hcs_problem, pigeon_problem, standard_families

_BUILDERS: dict[str, Callable[[], TFNPProblem]] = {}


def _register(builder: Callable[[], TFNPProblem]):
    probe = builder()
    _BUILDERS[probe.name] = builder
    return probe.name


def _populate():
    if _BUILDERS:
        return
    from .problems import factoring_problem

    _register(factoring_problem)
    for fam in standard_families():
        _register(lambda fam=fam: pigeon_problem(fam))
    _register(lambda: pigeon_problem(
        next(f for f in standard_families() if f.name == "mod2"), unary=True))
    _register(lambda: hcs_problem(order_sentence()))
    _register(lambda: hcs_problem(PHP_SENTENCE))
    _register(xorflip_problem)
    _register(copy_problem)


def builtin_names() -> list[str]:
    _populate()
    return sorted(_BUILDERS)


def builtin_problem(name: str) -> TFNPProblem:
    _populate()
    if name not in _BUILDERS:
        raise KeyError(f"unknown builtin problem {name!r}; see builtin_names()")
    return _BUILDERS[name]()


def attach_builtin_hooks(problem: TFNPProblem) -> TFNPProblem:
    """When a loaded problem record matches a builtin exactly, return the
    hooked builtin so reference solving works; otherwise pass it through."""
    _populate()
    if problem.name in _BUILDERS:
        candidate = _BUILDERS[problem.name]()
        if candidate.bound == problem.bound and candidate.verifier == problem.verifier:
            return candidate
    return problem
