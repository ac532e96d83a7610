"""Grounding: substitution, Herbrand term enumeration, ground conjunctions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from ..props.formula import PropFormula, conj_all, const, neg, var, disj, conj
from .syntax import (
    AND,
    ATOM,
    FALSUM,
    IMPLIES,
    NOT,
    OR,
    Atom,
    FolError,
    Matrix,
    Signature,
    Term,
    UniversalSentence,
)


def substitute(sentence: UniversalSentence, terms: Sequence[Term]) -> Matrix:
    """Replace x_j by terms[j] throughout the matrix; result is ground.

    There are no binders inside matrices, so this is capture-free.
    """
    if len(terms) != sentence.k:
        raise FolError(f"expected {sentence.k} terms, got {len(terms)}")
    sig = sentence.signature
    for t in terms:
        if not t.is_ground(sig):
            raise FolError(f"term {t} is not ground")
    env = dict(zip(sentence.variables, terms))
    return substitute_matrix(sentence.matrix, env, sig)


def substitute_matrix(m: Matrix, env: Mapping[str, Term], sig: Signature) -> Matrix:
    def sub_term(t: Term) -> Term:
        if t.head in env and not t.args:
            return env[t.head]
        return Term(t.head, tuple(sub_term(a) for a in t.args))

    def walk(node: Matrix) -> Matrix:
        if node.op == ATOM:
            return Matrix(
                ATOM, atom=Atom(node.atom.rel, tuple(sub_term(t) for t in node.atom.args))
            )
        if node.op == FALSUM:
            return node
        return Matrix(node.op, children=tuple(walk(c) for c in node.children))

    return walk(m)


@dataclass(frozen=True)
class GroundConjunction:
    """Conjunction of ground instances plus the atom table.

    The atom table maps each distinct ground atom to a propositional
    variable index (0-based) in first-occurrence order over the whole
    instance sequence, scanned left to right.
    """

    instances: tuple[Matrix, ...]
    atom_table: tuple[Atom, ...]

    @property
    def atom_index(self) -> dict[Atom, int]:
        return {a: i for i, a in enumerate(self.atom_table)}

    def evaluate(self, bits: Sequence[bool]) -> bool:
        """Truth of the conjunction under table-indexed assignment bits.

        Missing bits count as 0 so any bit string can be scored.
        """
        idx = self.atom_index
        lookup = {
            a: (bool(bits[i]) if i < len(bits) else False) for a, i in idx.items()
        }
        return all(inst.evaluate(lookup) for inst in self.instances)

    def to_prop_formula(self) -> PropFormula:
        """Propositional form: atom i becomes variable i+1."""
        idx = self.atom_index

        def walk(node: Matrix) -> PropFormula:
            if node.op == ATOM:
                return var(idx[node.atom] + 1)
            if node.op == FALSUM:
                return const(False)
            if node.op == NOT:
                return neg(walk(node.children[0]))
            if node.op == AND:
                return conj(walk(node.children[0]), walk(node.children[1]))
            if node.op == OR:
                return disj(walk(node.children[0]), walk(node.children[1]))
            return disj(neg(walk(node.children[0])), walk(node.children[1]))

        return conj_all([walk(inst) for inst in self.instances])


def herbrand_expand(
    sentence: UniversalSentence, tuples: Sequence[Sequence[Term]]
) -> GroundConjunction:
    """Ground instance conjunction for the given term tuples (Eq-style expansion)."""
    instances = []
    table: list[Atom] = []
    seen: dict[Atom, int] = {}
    for tp in tuples:
        inst = substitute(sentence, list(tp))
        instances.append(inst)
        for a in inst.atoms():
            if a not in seen:
                seen[a] = len(table)
                table.append(a)
    return GroundConjunction(tuple(instances), tuple(table))


def enumerate_herbrand_terms(sig: Signature, depth: int) -> list[Term]:
    """All ground terms of depth <= depth, ordered by (depth, printed form)."""
    if depth < 0:
        raise FolError("depth must be >= 0")
    out: list[Term] = []
    for d in range(depth + 1):
        out.extend(_terms_of_depth(sig, d))
    return out


def _terms_of_depth(sig: Signature, d: int) -> list[Term]:
    if d == 0:
        return [Term(c) for c in sorted(sig.constants())]
    shallower = enumerate_herbrand_terms(sig, d - 1)
    exact = [t for t in shallower if t.depth() == d - 1]
    if not exact:
        return []
    bucket: list[Term] = []
    for name, arity in sorted(sig.functions):
        if arity == 0:
            continue
        bucket.extend(_apps_with_max_depth(name, arity, shallower, d - 1))
    return sorted(bucket, key=str)


def _apps_with_max_depth(name: str, arity: int, pool: list[Term], need: int) -> Iterator[Term]:
    def rec(i: int, chosen: list[Term], has_need: bool):
        if i == arity:
            if has_need:
                yield Term(name, tuple(chosen))
            return
        for t in pool:
            yield from rec(i + 1, chosen + [t], has_need or t.depth() == need)

    yield from rec(0, [], False)


def herbrand_term_stream(sig: Signature) -> Iterator[Term]:
    """Canonical enumeration of the whole Herbrand universe (possibly finite)."""
    d = 0
    while True:
        bucket = _terms_of_depth(sig, d)
        if not bucket and d > 0:
            return
        yield from bucket
        d += 1


def term_index(sig: Signature, t: Term) -> int:
    """Position of a ground term in the canonical enumeration."""
    target_d = t.depth()
    idx = 0
    for d in range(target_d):
        idx += len(_terms_of_depth(sig, d))
    bucket = _terms_of_depth(sig, target_d)
    try:
        return idx + bucket.index(t)
    except ValueError:
        raise FolError(f"{t} is not a ground term over the signature") from None


def term_at(sig: Signature, index: int) -> Term | None:
    """Inverse of term_index; None when the universe is smaller than index+1."""
    if index < 0:
        return None
    d = 0
    while True:
        bucket = _terms_of_depth(sig, d)
        if not bucket and d > 0:
            return None
        if index < len(bucket):
            return bucket[index]
        index -= len(bucket)
        d += 1


def universe_size(sig: Signature) -> int | None:
    """Number of ground terms when finite (no positive-arity symbols), else None."""
    if any(a > 0 for _, a in sig.functions):
        return None
    return len(sig.constants())
