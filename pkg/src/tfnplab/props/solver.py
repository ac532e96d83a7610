"""Complete DPLL solver: unit propagation with two watched literals,
chronological backtracking, first-unassigned branching, no learning.

Deterministic: identical inputs explore identical search trees, which the
test suite relies on for reproducible witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import CNF

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass(frozen=True)
class SatResult:
    status: str
    assignment: dict[int, bool] | None = None  # total over 1..num_vars when SAT


def sat_solve(cnf: CNF) -> SatResult:
    n = cnf.num_vars
    clauses = [list(cl) for cl in cnf.clauses]

    # Unit clauses are watched on their only literal twice; handled below.
    for cl in clauses:
        if not cl:
            return SatResult(UNSAT)

    # assignment[v]: None / True / False
    value: list[bool | None] = [None] * (n + 1)
    # watch lists keyed by literal: clauses currently watching that literal
    watches: dict[int, list[int]] = {}
    watched: list[list[int]] = []  # per clause: the (one or two) watched literals

    def add_watch(lit: int, ci: int):
        watches.setdefault(lit, []).append(ci)

    for ci, cl in enumerate(clauses):
        if len(cl) == 1:
            watched.append([cl[0]])
            add_watch(cl[0], ci)
        else:
            watched.append([cl[0], cl[1]])
            add_watch(cl[0], ci)
            add_watch(cl[1], ci)

    def lit_value(lit: int) -> bool | None:
        v = value[abs(lit)]
        if v is None:
            return None
        return v if lit > 0 else not v

    trail: list[int] = []  # literals in assignment order
    # decision stack: (trail length before decision, decided var, tried_second)
    decisions: list[tuple[int, int, bool]] = []

    def assign(lit: int) -> bool:
        """Assign lit true and propagate; return False on conflict."""
        queue = [lit]
        while queue:
            l = queue.pop()
            v = lit_value(l)
            if v is True:
                continue
            if v is False:
                return False
            value[abs(l)] = l > 0
            trail.append(l)
            # clauses watching -l must find a new watch or become unit/conflict
            wl = watches.get(-l, [])
            i = 0
            while i < len(wl):
                ci = wl[i]
                cl = clauses[ci]
                ws = watched[ci]
                other = ws[0] if len(ws) == 2 and ws[1] == -l else (ws[1] if len(ws) == 2 else ws[0])
                if len(ws) == 2 and lit_value(other) is True:
                    i += 1
                    continue
                moved = False
                if len(ws) == 2:
                    for cand in cl:
                        if cand == ws[0] or cand == ws[1]:
                            continue
                        if lit_value(cand) is not False:
                            # move watch from -l to cand
                            ws[ws.index(-l)] = cand
                            add_watch(cand, ci)
                            wl[i] = wl[-1]
                            wl.pop()
                            moved = True
                            break
                if moved:
                    continue
                # clause is unit on `other` (or conflicting)
                ov = lit_value(other) if len(ws) == 2 else lit_value(ws[0])
                unit = other if len(ws) == 2 else ws[0]
                if unit == -l or ov is False:
                    return False
                if ov is None:
                    queue.append(unit)
                i += 1
        return True

    def undo_to(mark: int):
        while len(trail) > mark:
            l = trail.pop()
            value[abs(l)] = None

    # top-level propagation of unit clauses
    for ci, cl in enumerate(clauses):
        if len(cl) == 1 and lit_value(cl[0]) is not True:
            if not assign(cl[0]):
                return SatResult(UNSAT)

    def first_unassigned() -> int | None:
        for v in range(1, n + 1):
            if value[v] is None:
                return v
        return None

    while True:
        v = first_unassigned()
        if v is None:
            model = {i: bool(value[i]) for i in range(1, n + 1)}
            return SatResult(SAT, model)
        decisions.append((len(trail), v, False))
        ok = assign(-v)  # try False first: least models tend to come out first
        while not ok:
            # backtrack chronologically
            while decisions and decisions[-1][2]:
                mark, dv, _ = decisions.pop()
                undo_to(mark)
            if not decisions:
                return SatResult(UNSAT)
            mark, dv, _ = decisions.pop()
            undo_to(mark)
            decisions.append((mark, dv, True))
            ok = assign(dv)


def verify_model(cnf: CNF, model: dict[int, bool]) -> bool:
    for cl in cnf.clauses:
        if not any(model[abs(l)] == (l > 0) for l in cl):
            return False
    return True


def brute_force_solve(cnf: CNF) -> SatResult:
    """Exhaustive reference used to cross-check the DPLL engine."""
    n = cnf.num_vars
    for bits in range(1 << n):
        model = {v: bool((bits >> (v - 1)) & 1) for v in range(1, n + 1)}
        if verify_model(cnf, model):
            return SatResult(SAT, model)
    return SatResult(UNSAT)


def all_models(cnf: CNF, limit: int | None = None):
    """Yield every model (total assignments), exhaustively; tests only."""
    n = cnf.num_vars
    count = 0
    for bits in range(1 << n):
        model = {v: bool((bits >> (v - 1)) & 1) for v in range(1, n + 1)}
        if verify_model(cnf, model):
            yield model
            count += 1
            if limit is not None and count >= limit:
                return
