"""Proof systems in the Cook-Reckhow sense: total polynomial-time maps
from strings onto the tautologies (or onto the satisfiable formulas for
SAT systems).  Surjectivity is concrete: every system accepts an
exhaustive-truth-table escape proof, and unparseable strings map to a
fixed default output, so the checker is total.

Proof string formats (documented interchange):

    TAUT:<formula>:<2^n table bits>     truth-table escape (TAUT systems)
    RES:<formula>:<refutation lines>    resolution of tseitin(~formula)
    SAT:<formula>:<assignment bits>     satisfying assignment (SAT systems)
    GAMMA:<decimal n>                   the compositeness formula, bare
                                        (composite SAT system only)

Assignment and table bits follow the formula's variables in increasing
index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..props.circuit import CircuitBuilder
from ..props.cnf import CNF
from ..props.formula import (
    PropFormula,
    all_assignments,
    brute_force_satisfiable,
    conj,
    disj,
    neg,
    var,
)
from ..props.text import cnf_to_formula, parse_prop
from ..props.tseitin import tseitin, tseitin_circuit
from ..vm.isa import PolyBound
from .resolution import check_resolution, refutation_from_lines, refutation_to_lines

TAUT = "TAUT"
SAT_DOMAIN = "SAT"

DEFAULT_TAUTOLOGY = disj(var(1), neg(var(1)))
DEFAULT_SATISFIABLE = var(1)


@dataclass(frozen=True)
class ProofSystem:
    """Total checker mapping every string to the formula it proves.

    Realized as a host function with a declared step bound rather than
    verifier bytecode: these checkers parse formulas and run Tseitin
    conversions, which the register machine cannot express reasonably.
    """

    name: str
    domain: str  # TAUT or SAT_DOMAIN
    check: Callable[[str], PropFormula] = field(compare=False)
    budget_note: str = ""

    def proves(self, proof: str, formula: PropFormula) -> bool:
        return self.check(proof) == formula


def _table_escape(formula_text: str, table: str) -> PropFormula | None:
    """Validate a TAUT escape: the supplied table must be the formula's
    actual truth table and all-true."""
    try:
        f = parse_prop(formula_text)
    except ValueError:
        return None
    n = len(f.variables())
    if len(table) != 1 << n:
        return None
    for row, assignment in enumerate(all_assignments(f.variables())):
        want = table[row] == "1"
        if f.evaluate(assignment) != want or not want:
            return None
    return f


def taut_table_proof(f: PropFormula) -> str:
    """The escape proof of a tautology (exponential, always available)."""
    table = "".join(
        "1" if f.evaluate(a) else "0" for a in all_assignments(f.variables())
    )
    return f"TAUT:{f}:{table}"


def truth_table_system() -> ProofSystem:
    def check(proof: str) -> PropFormula:
        parts = proof.split(":", 2)
        if len(parts) == 3 and parts[0] == "TAUT":
            got = _table_escape(parts[1], parts[2])
            if got is not None:
                return got
        return DEFAULT_TAUTOLOGY

    return ProofSystem(
        "truth-table", TAUT, check,
        budget_note="linear scan of the supplied table, one evaluation per row",
    )


def resolution_proof_system() -> ProofSystem:
    """Proofs are resolution refutations of tseitin(~formula); the
    truth-table escape keeps the system surjective onto TAUT."""

    def check(proof: str) -> PropFormula:
        parts = proof.split(":", 2)
        if len(parts) == 3 and parts[0] == "TAUT":
            got = _table_escape(parts[1], parts[2])
            if got is not None:
                return got
        if len(parts) == 3 and parts[0] == "RES":
            try:
                f = parse_prop(parts[1])
                ref = refutation_from_lines(parts[2].replace(";", "\n"))
            except ValueError:
                return DEFAULT_TAUTOLOGY
            cnf = tseitin(neg(f)).cnf
            if check_resolution(cnf, ref):
                return f
        return DEFAULT_TAUTOLOGY

    return ProofSystem(
        "resolution", TAUT, check,
        budget_note="one pass over refutation steps, set operations per step",
    )


def resolution_proof(f: PropFormula) -> str | None:
    """A RES-format proof of f found by saturation, when one is in reach."""
    from .resolution import find_refutation

    cnf = tseitin(neg(f)).cnf
    ref = find_refutation(cnf)
    if ref is None:
        return None
    return f"RES:{f}:" + refutation_to_lines(ref).strip().replace("\n", ";")


def standard_sat_system() -> ProofSystem:
    """The defining system for SAT: a proof is (formula, satisfying
    assignment)."""

    def check(proof: str) -> PropFormula:
        parts = proof.split(":", 2)
        if len(parts) == 3 and parts[0] == "SAT":
            try:
                f = parse_prop(parts[1])
            except ValueError:
                return DEFAULT_SATISFIABLE
            vs = sorted(f.variables())
            bits = parts[2]
            if len(bits) == len(vs) and all(c in "01" for c in bits):
                assignment = {v: bits[i] == "1" for i, v in enumerate(vs)}
                if f.evaluate(assignment):
                    return f
        return DEFAULT_SATISFIABLE

    return ProofSystem(
        "standard-sat", SAT_DOMAIN, check,
        budget_note="one formula evaluation",
    )


def sat_proof(f: PropFormula, assignment: dict[int, bool]) -> str:
    vs = sorted(f.variables())
    bits = "".join("1" if assignment[v] else "0" for v in vs)
    return f"SAT:{f}:{bits}"


# --- the compositeness formulas gamma_n -----------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def gamma_cnf(n: int) -> CNF:
    """CNF expressing that n is composite: a Tseitin-encoded fixed-width
    multiplier constrained to a*b = n with a, b >= 2.

    Variables 1..w are the bits of a, w+1..2w the bits of b (w bits each,
    w = bit length of n); satisfying assignments project exactly onto the
    factor pairs of n.
    """
    if n < 2:
        raise ValueError("gamma is defined for n >= 2")
    w = max(2, n.bit_length())
    cb = CircuitBuilder(2 * w)
    a_bits = [cb.input(i) for i in range(w)]
    b_bits = [cb.input(w + i) for i in range(w)]
    # schoolbook product, 2w bits
    acc = [cb.const(False)] * (2 * w)
    for i in range(w):
        row = [cb.const(False)] * i + [cb.and_(a_bits[i], b_bits[j]) for j in range(w)]
        row += [cb.const(False)] * (2 * w - len(row))
        carry = cb.const(False)
        nxt = []
        for k in range(2 * w):
            x, y = acc[k], row[k]
            s = cb.xor(cb.xor(x, y), carry)
            carry = cb.or_(cb.and_(x, y), cb.and_(carry, cb.xor(x, y)))
            nxt.append(s)
        acc = nxt
    target = [(n >> k) & 1 == 1 for k in range(2 * w)]
    eq = cb.const(True)
    for k in range(2 * w):
        bit = acc[k] if target[k] else cb.not_(acc[k])
        eq = cb.and_(eq, bit)
    a_ge2 = cb.or_many(a_bits[1:])
    b_ge2 = cb.or_many(b_bits[1:])
    out = cb.and_(eq, cb.and_(a_ge2, b_ge2))
    return tseitin_circuit(cb.finish([out])).cnf


def gamma_formula(n: int) -> PropFormula:
    return cnf_to_formula(gamma_cnf(n))


def composite_sat_system() -> ProofSystem:
    """The standard SAT system extended so that GAMMA:<n> proves the
    compositeness formula bare, exactly when n is composite (checked by
    trial division).  The bare-formula proofs are written in this named
    presentation of gamma."""
    base = standard_sat_system()

    def check(proof: str) -> PropFormula:
        if proof.startswith("GAMMA:"):
            try:
                n = int(proof.split(":", 1)[1])
            except ValueError:
                return DEFAULT_SATISFIABLE
            if n >= 2 and not _is_prime(n):
                return gamma_formula(n)
            return DEFAULT_SATISFIABLE
        return base.check(proof)

    return ProofSystem(
        "composite-sat", SAT_DOMAIN, check,
        budget_note="trial division up to sqrt(n) plus the base system",
    )


# --- simulations -----------------------------------------------------------

@dataclass(frozen=True)
class SimulationRecord:
    """Either a length simulation (a polynomial bounding target proof
    length in source proof length) or a p-simulation (a proof
    translator), between two systems over the same domain."""

    source: ProofSystem
    target: ProofSystem
    length_poly: PolyBound | None = None
    translate: Callable[[str], str] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.length_poly is None and self.translate is None:
            raise ValueError("a simulation needs a length polynomial or a translator")
        if self.source.domain != self.target.domain:
            raise ValueError("simulations relate systems over one domain")


def check_p_simulation(rec: SimulationRecord, proofs: list[str]) -> list[str]:
    """Per-proof extensional check: the translated proof proves the same
    formula.  Returns diagnostics for failures."""
    if rec.translate is None:
        raise ValueError("record carries no translator")
    problems = []
    for d in proofs:
        want = rec.source.check(d)
        got = rec.target.check(rec.translate(d))
        if got != want:
            problems.append(f"{d[:40]!r}: source proves {want}, target proves {got}")
    return problems
