"""Propositional formulas over integer-indexed variables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

VAR = "var"
CONST = "const"
NOT = "not"
AND = "and"
OR = "or"


@dataclass(frozen=True)
class PropFormula:
    """Formula tree node.

    ``op`` is one of var/const/not/and/or.  For ``var`` the payload is a
    variable index >= 1, for ``const`` a bool; the other nodes carry one or
    two children in ``args``.
    """

    op: str
    index: int = 0
    value: bool = False
    args: tuple["PropFormula", ...] = ()

    def __post_init__(self):
        if self.op == VAR and self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")
        if self.op == NOT and len(self.args) != 1:
            raise ValueError("not takes one argument")
        if self.op in (AND, OR) and len(self.args) != 2:
            raise ValueError(f"{self.op} takes two arguments")

    def variables(self) -> set[int]:
        if self.op == VAR:
            return {self.index}
        out: set[int] = set()
        for a in self.args:
            out |= a.variables()
        return out

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        if self.op == VAR:
            return bool(assignment[self.index])
        if self.op == CONST:
            return self.value
        if self.op == NOT:
            return not self.args[0].evaluate(assignment)
        if self.op == AND:
            return self.args[0].evaluate(assignment) and self.args[1].evaluate(assignment)
        return self.args[0].evaluate(assignment) or self.args[1].evaluate(assignment)

    def __str__(self) -> str:
        if self.op == VAR:
            return f"x{self.index}"
        if self.op == CONST:
            return "true" if self.value else "false"
        if self.op == NOT:
            return f"~{self.args[0]}"
        sym = " & " if self.op == AND else " | "
        return "(" + sym.join(str(a) for a in self.args) + ")"


def var(i: int) -> PropFormula:
    return PropFormula(VAR, index=i)


def const(b: bool) -> PropFormula:
    return PropFormula(CONST, value=b)


def neg(f: PropFormula) -> PropFormula:
    return PropFormula(NOT, args=(f,))


def conj(a: PropFormula, b: PropFormula) -> PropFormula:
    return PropFormula(AND, args=(a, b))


def disj(a: PropFormula, b: PropFormula) -> PropFormula:
    return PropFormula(OR, args=(a, b))


def conj_all(parts: list[PropFormula]) -> PropFormula:
    """Conjunction of a list; empty list is the empty (true) conjunction."""
    if not parts:
        return const(True)
    out = parts[0]
    for p in parts[1:]:
        out = conj(out, p)
    return out


def all_assignments(variables: set[int]) -> Iterator[dict[int, bool]]:
    """Every total assignment over the given variables, in a fixed order."""
    order = sorted(variables)
    for bits in itertools.product((False, True), repeat=len(order)):
        yield dict(zip(order, bits))


def brute_force_satisfiable(f: PropFormula) -> dict[int, bool] | None:
    """Truth-table satisfiability: the independent oracle for solver tests."""
    for a in all_assignments(f.variables()):
        if f.evaluate(a):
            return a
    return None


def is_tautology(f: PropFormula) -> bool:
    return all(f.evaluate(a) for a in all_assignments(f.variables()))
