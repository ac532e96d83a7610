"""Seeded generators for sentences and terms, used by property tests and
the selftest battery.  Consistency of generated sentences is guaranteed
by construction: every clause carries at least one positive literal, so
the all-relations-true structure is a model.
"""

from __future__ import annotations

import random

from .herbrand import enumerate_herbrand_terms
from .syntax import (
    Matrix,
    Signature,
    Term,
    UniversalSentence,
    atom,
    m_and,
    m_implies,
    m_not,
    m_or,
)

_SIGNATURES = [
    Signature((("c", 0), ("f", 1)), (("R", 2), ("P", 1))),
    Signature((("a", 0), ("b", 0)), (("R", 2), ("Q", 1))),
    Signature((("c", 0), ("g", 2)), (("P", 1), ("S", 3))),
    Signature((("e", 0), ("f", 1), ("d", 0)), (("R", 2),)),
]


def random_term(rng: random.Random, sig: Signature, variables: list[str], depth: int) -> Term:
    choices: list[Term] = [Term(v) for v in variables]
    choices += [Term(c) for c in sig.constants()]
    if depth > 0:
        for name, ar in sig.functions:
            if ar > 0:
                args = tuple(random_term(rng, sig, variables, depth - 1) for _ in range(ar))
                choices.append(Term(name, args))
    return rng.choice(choices)


def random_atom(rng: random.Random, sig: Signature, variables: list[str], depth: int) -> Matrix:
    rel, ar = rng.choice(sig.relations)
    args = tuple(random_term(rng, sig, variables, depth) for _ in range(ar))
    return atom(rel, *args)


def random_matrix(rng: random.Random, sig: Signature, variables: list[str], depth: int) -> Matrix:
    if depth == 0 or rng.random() < 0.3:
        a = random_atom(rng, sig, variables, 1)
        return m_not(a) if rng.random() < 0.4 else a
    op = rng.choice(["and", "or", "implies", "not"])
    if op == "not":
        return m_not(random_matrix(rng, sig, variables, depth - 1))
    a = random_matrix(rng, sig, variables, depth - 1)
    b = random_matrix(rng, sig, variables, depth - 1)
    if op == "and":
        return m_and(a, b)
    if op == "or":
        return m_or(a, b)
    return m_implies(a, b)


def random_sentence(rng: random.Random, max_depth: int = 3) -> UniversalSentence:
    """Arbitrary sentence (no consistency promise); for parser round trips."""
    sig = rng.choice(_SIGNATURES)
    k = rng.randint(1, 3)
    variables = [f"x{i}" for i in range(1, k + 1)]
    return UniversalSentence(sig, tuple(variables), random_matrix(rng, sig, variables, max_depth))


def random_consistent_sentence(rng: random.Random) -> UniversalSentence:
    """CNF-shaped sentence where every clause has a positive literal.

    The structure interpreting every relation as total satisfies each
    clause, so the sentence is consistent and every Herbrand expansion is
    satisfiable (by the all-true assignment, and usually others).
    """
    sig = rng.choice(_SIGNATURES)
    k = rng.randint(1, 3)
    variables = [f"x{i}" for i in range(1, k + 1)]
    clauses = []
    for _ in range(rng.randint(1, 4)):
        lits = [random_atom(rng, sig, variables, 1)]  # the guaranteed positive one
        for _ in range(rng.randint(0, 2)):
            a = random_atom(rng, sig, variables, 1)
            lits.append(m_not(a) if rng.random() < 0.6 else a)
        rng.shuffle(lits)
        cl = lits[0]
        for l in lits[1:]:
            cl = m_or(cl, l)
        clauses.append(cl)
    m = clauses[0]
    for cl in clauses[1:]:
        m = m_and(m, cl)
    return UniversalSentence(sig, tuple(variables), m)


def random_tuples(
    rng: random.Random, sentence: UniversalSentence, count: int, depth: int = 1
) -> list[list[Term]]:
    pool = enumerate_herbrand_terms(sentence.signature, depth)
    return [[rng.choice(pool) for _ in range(sentence.k)] for _ in range(count)]
