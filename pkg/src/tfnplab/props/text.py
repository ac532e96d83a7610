"""Text form for propositional formulas: variables x1, x2, ..., constants
true/false, ~ & | with the usual precedence, parentheses.  The printer in
formula.__str__ emits this grammar."""

from __future__ import annotations

import re

from .cnf import CNF
from .formula import PropFormula, conj, conj_all, const, disj, neg, var


class PropParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(x\d+|true|false|[~&|()])")


def parse_prop(text: str) -> PropFormula:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise PropParseError(f"unexpected character at {pos}: {text[pos:pos+8]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append("$")
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def or_expr() -> PropFormula:
        left = and_expr()
        while peek() == "|":
            take()
            left = disj(left, and_expr())
        return left

    def and_expr() -> PropFormula:
        left = unary()
        while peek() == "&":
            take()
            left = conj(left, unary())
        return left

    def unary() -> PropFormula:
        t = take()
        if t == "~":
            return neg(unary())
        if t == "(":
            f = or_expr()
            if take() != ")":
                raise PropParseError("missing )")
            return f
        if t == "true":
            return const(True)
        if t == "false":
            return const(False)
        if t.startswith("x"):
            return var(int(t[1:]))
        raise PropParseError(f"unexpected token {t!r}")

    f = or_expr()
    if peek() != "$":
        raise PropParseError(f"trailing input {peek()!r}")
    return f


def cnf_to_formula(cnf: CNF) -> PropFormula:
    parts = []
    for cl in cnf.clauses:
        lit = None
        for l in cl:
            term = var(abs(l)) if l > 0 else neg(var(abs(l)))
            lit = term if lit is None else disj(lit, term)
        parts.append(lit)
    return conj_all(parts)
