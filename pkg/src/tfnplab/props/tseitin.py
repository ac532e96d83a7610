"""Tseitin conversion: equisatisfiable CNF with fresh definition variables."""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import CNF
from .formula import AND, CONST, NOT, OR, VAR, PropFormula


@dataclass(frozen=True)
class TseitinResult:
    cnf: CNF
    # formula variable index -> CNF variable index (identity by construction,
    # kept explicit so callers can project models back)
    var_map: dict[int, int]
    root_literal: int

    def project_model(self, model: dict[int, bool]) -> dict[int, bool]:
        """Restrict a CNF model to the original formula variables."""
        return {v: model[cv] for v, cv in self.var_map.items()}


def tseitin(f: PropFormula) -> TseitinResult:
    """Encode ``f``: satisfiable iff the CNF is, models project back.

    Original variables keep their indices; auxiliary variables are
    allocated past the largest original index.  Constants are encoded with
    a dedicated always-true auxiliary variable.
    """
    fvars = f.variables()
    top = max(fvars) if fvars else 0
    next_var = top + 1
    clauses: list[tuple[int, ...]] = []
    cache: dict[PropFormula, int] = {}
    true_lit: int | None = None

    def fresh() -> int:
        nonlocal next_var
        v = next_var
        next_var += 1
        return v

    def get_true() -> int:
        nonlocal true_lit
        if true_lit is None:
            true_lit = fresh()
            clauses.append((true_lit,))
        return true_lit

    def encode(node: PropFormula) -> int:
        if node in cache:
            return cache[node]
        if node.op == VAR:
            lit = node.index
        elif node.op == CONST:
            lit = get_true() if node.value else -get_true()
        elif node.op == NOT:
            lit = -encode(node.args[0])
        else:
            a = encode(node.args[0])
            b = encode(node.args[1])
            g = fresh()
            if node.op == AND:
                clauses.append((-g, a))
                clauses.append((-g, b))
                clauses.append((g, -a, -b))
            else:
                clauses.append((-g, a, b))
                clauses.append((g, -a))
                clauses.append((g, -b))
            lit = g
        cache[node] = lit
        return lit

    root = encode(f)
    clauses.append((root,))
    cnf = CNF.build(next_var - 1, clauses)
    return TseitinResult(cnf=cnf, var_map={v: v for v in sorted(fvars)}, root_literal=root)


def tseitin_circuit(circuit) -> TseitinResult:
    """Equisatisfiable CNF of a plain circuit with a single output.

    Input bit i becomes variable i+1; every other gate gets a fresh
    variable with full defining clauses; the output is asserted true.
    """
    if circuit.has_oracle:
        raise ValueError("oracle circuits have no CNF form")
    if len(circuit.outputs) != 1:
        raise ValueError("tseitin_circuit expects a single-output circuit")
    next_var = circuit.n_inputs + 1
    clauses: list[tuple[int, ...]] = []
    lit: list[int] = []

    def fresh() -> int:
        nonlocal next_var
        v = next_var
        next_var += 1
        return v

    for g in circuit.gates:
        op = g[0]
        if op == "IN":
            lit.append(g[1] + 1)
        elif op == "CONST":
            v = fresh()
            clauses.append((v,) if g[1] else (-v,))
            lit.append(v)
        elif op == "BUF":
            lit.append(lit[g[1]])
        elif op == "NOT":
            lit.append(-lit[g[1]])
        else:
            a, bb = lit[g[1]], lit[g[2]]
            v = fresh()
            if op == "AND":
                clauses.append((-v, a))
                clauses.append((-v, bb))
                clauses.append((v, -a, -bb))
            else:
                clauses.append((-v, a, bb))
                clauses.append((v, -a))
                clauses.append((v, -bb))
            lit.append(v)
    clauses.append((lit[circuit.outputs[0]],))
    cnf = CNF.build(next_var - 1, clauses)
    return TseitinResult(
        cnf=cnf,
        var_map={i + 1: i + 1 for i in range(circuit.n_inputs)},
        root_literal=lit[circuit.outputs[0]],
    )
