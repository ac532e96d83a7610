"""Resolution refutations: checking, saturation search, serialization.

A refutation is a sequence of steps, each either INITIAL(k) naming an
input clause or RESOLVENT(i, j, pivot) resolving two earlier steps on a
pivot (positive in step i, negative in step j); it is valid when every
step is well-formed and the final clause is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..props.cnf import CNF

INITIAL = "INIT"
RESOLVENT = "RES"


@dataclass(frozen=True)
class Step:
    kind: str
    i: int = 0
    j: int = 0
    pivot: int = 0


@dataclass(frozen=True)
class ResolutionRefutation:
    steps: tuple[Step, ...]


def initial(k: int) -> Step:
    return Step(INITIAL, i=k)


def resolvent(i: int, j: int, pivot: int) -> Step:
    return Step(RESOLVENT, i=i, j=j, pivot=pivot)


def validate_resolution(cnf: CNF, ref: ResolutionRefutation) -> list[str]:
    """Diagnostics; empty list means the refutation is valid."""
    problems: list[str] = []
    derived: list[frozenset[int]] = []
    for idx, st in enumerate(ref.steps):
        if st.kind == INITIAL:
            if not 0 <= st.i < len(cnf.clauses):
                problems.append(f"step {idx}: initial clause index {st.i} out of range")
                derived.append(frozenset())
                continue
            derived.append(frozenset(cnf.clauses[st.i]))
        elif st.kind == RESOLVENT:
            if not (0 <= st.i < idx and 0 <= st.j < idx):
                problems.append(f"step {idx}: resolvent references {st.i},{st.j}")
                derived.append(frozenset())
                continue
            ci, cj = derived[st.i], derived[st.j]
            if st.pivot == 0 or st.pivot not in ci or -st.pivot not in cj:
                problems.append(
                    f"step {idx}: pivot {st.pivot} not positive in step {st.i} "
                    f"and negative in step {st.j}"
                )
                derived.append(frozenset())
                continue
            derived.append((ci - {st.pivot}) | (cj - {-st.pivot}))
        else:
            problems.append(f"step {idx}: unknown step kind {st.kind}")
            derived.append(frozenset())
    if not ref.steps:
        problems.append("empty refutation")
    elif not problems and derived[-1]:
        problems.append("final clause is not empty")
    return problems


def check_resolution(cnf: CNF, ref: ResolutionRefutation) -> bool:
    return not validate_resolution(cnf, ref)


def _prune(steps: list[Step]) -> ResolutionRefutation:
    """Drop steps the final clause does not depend on."""
    needed = {len(steps) - 1}
    for idx in range(len(steps) - 1, -1, -1):
        if idx in needed and steps[idx].kind == RESOLVENT:
            needed.add(steps[idx].i)
            needed.add(steps[idx].j)
    order = sorted(needed)
    renumber = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        st = steps[old]
        if st.kind == RESOLVENT:
            out.append(resolvent(renumber[st.i], renumber[st.j], st.pivot))
        else:
            out.append(st)
    return ResolutionRefutation(tuple(out))


def find_refutation(cnf: CNF, step_limit: int = 20000) -> ResolutionRefutation | None:
    """Saturation with parent tracking; None when no refutation surfaces
    within the limit (for satisfiable CNFs, after full saturation).
    The result is pruned to the ancestors of the empty clause."""
    known: dict[frozenset[int], int] = {}
    steps: list[Step] = []

    def add(clause: frozenset[int], step: Step) -> int | None:
        if clause in known:
            return None
        known[clause] = len(steps)
        steps.append(step)
        return known[clause]

    for k, cl in enumerate(cnf.clauses):
        add(frozenset(cl), initial(k))
        if not cl:
            return _prune(steps)

    frontier = list(known.items())
    processed: list[tuple[frozenset[int], int]] = []
    while frontier and len(steps) < step_limit:
        clause, idx = frontier.pop(0)
        for other, odx in processed + [(clause, idx)]:
            for pivot in clause:
                if pivot > 0 and -pivot in other:
                    new = (clause - {pivot}) | (other - {-pivot})
                elif pivot < 0 and -pivot in other:
                    new = (other - {-pivot}) | (clause - {pivot})
                    pivot = -pivot
                else:
                    continue
                if any(-l in new for l in new):
                    continue  # tautological resolvents never help
                first = idx if pivot in clause else odx
                second = odx if first == idx else idx
                ndx = add(new, resolvent(first, second, pivot))
                if ndx is None:
                    continue
                if not new:
                    return _prune(steps)
                frontier.append((new, ndx))
        processed.append((clause, idx))
    return None


def refutation_to_lines(ref: ResolutionRefutation) -> str:
    lines = []
    for st in ref.steps:
        if st.kind == INITIAL:
            lines.append(f"INIT {st.i}")
        else:
            lines.append(f"RES {st.i} {st.j} {st.pivot}")
    return "\n".join(lines) + "\n"


def refutation_from_lines(text: str) -> ResolutionRefutation:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "INIT":
                steps.append(initial(int(parts[1])))
            elif parts[0] == "RES":
                steps.append(resolvent(int(parts[1]), int(parts[2]), int(parts[3])))
            else:
                raise ValueError(f"unknown step {parts[0]!r}")
        except (IndexError, ValueError) as e:
            raise ValueError(f"line {lineno}: {e}") from None
    return ResolutionRefutation(tuple(steps))
