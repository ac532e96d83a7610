"""CNF container and DIMACS interchange.

Normalization rules (fixed so round trips are bit-exact after one pass):
duplicate literals inside a clause are collapsed, tautological clauses
(containing both l and -l) are dropped, literals are sorted by variable
index with the positive literal first on ties.
"""

from __future__ import annotations

from dataclasses import dataclass


class DimacsError(ValueError):
    pass


def _normalize_clause(lits) -> tuple[int, ...] | None:
    seen = set(lits)
    if 0 in seen:
        raise ValueError("literal 0 is not allowed")
    for l in seen:
        if -l in seen:
            return None
    return tuple(sorted(seen, key=lambda l: (abs(l), l < 0)))


@dataclass(frozen=True)
class CNF:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause not representable; encode via {x},{-x}")
            for l in cl:
                if l == 0 or abs(l) > self.num_vars:
                    raise ValueError(f"literal {l} out of range for {self.num_vars} vars")

    @staticmethod
    def build(num_vars: int, raw_clauses) -> "CNF":
        """Construct with normalization (dedupe, drop tautological clauses)."""
        out = []
        for cl in raw_clauses:
            norm = _normalize_clause(cl)
            if norm is not None:
                out.append(norm)
        return CNF(num_vars, tuple(out))


def to_dimacs(cnf: CNF) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for cl in cnf.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> CNF:
    num_vars = None
    num_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-numeric header fields") from None
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                norm = _normalize_clause(current)
                if norm is not None:
                    clauses.append(norm)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(f"line {lineno}: literal {lit} out of range")
                current.append(lit)
    if num_vars is None:
        raise DimacsError("missing header")
    if current:
        raise DimacsError("unterminated clause at end of input")
    if num_clauses is not None and num_clauses != len(clauses):
        # Header count may disagree after tautology dropping; trust the clauses.
        pass
    return CNF(num_vars, tuple(clauses))
