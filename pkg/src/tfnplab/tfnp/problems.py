"""The concrete search problems: integer factoring, the pigeonhole
collision problem for a fixed function family, and Herbrand consistency
search for a fixed universal sentence.

Desk-scale guards (documented, not hidden): the factoring verifier
accepts everything once |N| > 17 bits and the pigeon verifiers once
|r| > 31 bits, keeping totality while staying inside 32-bit words; the
declared budgets honestly cover the guarded domains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from ..fol.herbrand import GroundConjunction, herbrand_expand, term_at, term_index
from ..fol.syntax import (
    ATOM,
    FALSUM,
    Matrix,
    Signature,
    Term,
    UniversalSentence,
)
from ..props.circuit import BoolCircuit, eval_circuit
from ..props.solver import SAT, sat_solve
from ..props.tseitin import tseitin
from ..vm.build import ProgramBuilder
from ..vm.isa import MASK, PolyBound, VerifierProgram, bits_to_int, int_to_bits, run
from .problem import TFNPProblem, TotalityViolation

U16 = 0xFFFF


# --------------------------------------------------------------------------
# FACTORING
# --------------------------------------------------------------------------

def factoring_verifier() -> VerifierProgram:
    """Q(N, M): N prime, or 1 < M < N and M divides N.

    N <= 1 accepts any M (degenerate extension keeping totality), as does
    |N| > 17 bits (word guard).  Primality is trial division by 2 then odd
    d with d*d <= N, tracked via d <= N div d.
    """
    b = ProgramBuilder("factoring-q", 2)
    lenN, N, lenM, M, d, q, r, t = (b.reg() for _ in range(8))
    acc, rej, prime_chk, loop = b.label(), b.label(), b.label(), b.label()

    b.emit("LOADLEN", lenN, 0)
    b.emit("LT", t, b.const_reg(17), lenN)
    b.jnz(t, acc)
    b.emit("LOADW", N, 0, b.const_reg(0))
    b.emit("LE", t, N, b.const_reg(1))
    b.jnz(t, acc)
    b.emit("LOADLEN", lenM, 1)
    b.emit("LT", t, b.const_reg(31), lenM)
    b.jnz(t, prime_chk)
    b.emit("LOADW", M, 1, b.const_reg(0))
    b.emit("LT", t, b.const_reg(1), M)
    b.jz(t, prime_chk)
    b.emit("LT", t, M, N)
    b.jz(t, prime_chk)
    b.emit("MOD", r, N, M)
    b.jz(r, acc)
    b.mark(prime_chk)
    b.emit("LT", t, N, b.const_reg(4))
    b.jnz(t, acc)  # 2 and 3 are prime
    b.emit("MOD", r, N, b.const_reg(2))
    b.jz(r, rej)
    b.emit("CONST", d, 3)
    b.mark(loop)
    b.emit("DIV", q, N, d)
    b.emit("LT", t, q, d)
    b.jnz(t, acc)  # d*d > N with no divisor found: prime
    b.emit("MOD", r, N, d)
    b.jz(r, rej)
    b.emit("ADD", d, d, b.const_reg(2))
    b.jmp(loop)
    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")
    return b.finish(budget=PolyBound(5, 2, 64))


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


def _factoring_reference(x: str) -> str:
    n = bits_to_int(x)
    if n <= 1 or len(x) > 17 or _is_prime(n):
        return ""
    if n % 2 == 0:
        return int_to_bits(2)
    d = 3
    while n % d:
        d += 2
    return int_to_bits(d)


def factoring_problem() -> TFNPProblem:
    bound = PolyBound(1, 1, 0)  # |M| <= |N|
    return TFNPProblem(
        name="factoring",
        bound=bound,
        verifier=factoring_verifier(),
        reference_solver=_factoring_reference,
        witness_enumerator=_factoring_enumerator(bound),
    )


# --------------------------------------------------------------------------
# PIGEON
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PigeonFamily:
    """The parametrized map f(r, x), given both as host code and as
    straight-line bytecode emitted into the verifier."""

    name: str
    eval: Callable[[int, int], int] = field(compare=False)
    emit: Callable[[ProgramBuilder, int, int, int], None] = field(compare=False)
    extra_steps: int = 4  # budget headroom for the emitted snippet


def _family_mod2() -> PigeonFamily:
    def emit(b, rd, rr, rx):
        b.emit("AND", rd, rx, b.const_reg(1))

    return PigeonFamily("mod2", lambda r, x: x & 1, emit)


def _family_const0() -> PigeonFamily:
    def emit(b, rd, rr, rx):
        b.emit("CONST", rd, 0)

    return PigeonFamily("const0", lambda r, x: 0, emit)


def _family_half() -> PigeonFamily:
    def emit(b, rd, rr, rx):
        b.emit("SHR", rd, rx, 1)

    return PigeonFamily("half", lambda r, x: x >> 1, emit)


def _family_identity() -> PigeonFamily:
    def emit(b, rd, rr, rx):
        b.emit("MOV", rd, rx)

    return PigeonFamily("identity", lambda r, x: x, emit)


def family_from_circuit(name: str, circuit: BoolCircuit) -> PigeonFamily:
    """Family computed by a 64-input (r word, x word) 32-output circuit."""
    if circuit.n_inputs != 64 or circuit.n_outputs != 32:
        raise ValueError("pigeon family circuits take r,x words and yield a word")

    def host_eval(r: int, x: int) -> int:
        bits = int_to_bits(r, 32) + int_to_bits(x, 32)
        return bits_to_int(eval_circuit(circuit, bits))

    def emit(b: ProgramBuilder, rd: int, rr: int, rx: int):
        t = b.reg()
        vals: list[int] = []
        for g in circuit.gates:
            op = g[0]
            reg = b.reg()
            if op == "IN":
                src, bit = (rr, g[1]) if g[1] < 32 else (rx, g[1] - 32)
                if bit:
                    b.emit("SHR", reg, src, bit)
                    b.emit("AND", reg, reg, b.const_reg(1))
                else:
                    b.emit("AND", reg, src, b.const_reg(1))
            elif op == "CONST":
                b.emit("CONST", reg, 1 if g[1] else 0)
            elif op == "NOT":
                b.emit("XOR", reg, vals[g[1]], b.const_reg(1))
            elif op == "BUF":
                b.emit("MOV", reg, vals[g[1]])
            elif op == "AND":
                b.emit("AND", reg, vals[g[1]], vals[g[2]])
            elif op == "OR":
                b.emit("OR", reg, vals[g[1]], vals[g[2]])
            else:
                raise ValueError("pigeon family circuits must be oracle-free")
            vals.append(reg)
        b.emit("CONST", rd, 0)
        for j, o in enumerate(circuit.outputs):
            if j:
                b.emit("SHL", t, vals[o], j)
                b.emit("OR", rd, rd, t)
            else:
                b.emit("OR", rd, rd, vals[o])

    return PigeonFamily(name, host_eval, emit, extra_steps=4 * len(circuit.gates) + 70)


def standard_families() -> list[PigeonFamily]:
    from ..props.circuit import CircuitBuilder

    cb = CircuitBuilder(64)
    x0 = cb.input(32)
    x1 = cb.input(33)
    low2 = [cb.buf(x0), cb.buf(cb.and_(x1, cb.not_(x0)))]
    outs = low2 + [cb.const(False)] * 30
    low2_circuit = cb.finish(outs)
    return [
        _family_mod2(),
        _family_const0(),
        _family_half(),
        _family_identity(),
        family_from_circuit("low2mix", low2_circuit),
    ]


def _pigeon_verifier(family: PigeonFamily, unary: bool) -> VerifierProgram:
    """R(r, u): (val(u) <= r and f(r, val(u)) >= r), or u decodes as a pair
    (x, x') of distinct values <= r with f(r, x) = f(r, x')."""
    b = ProgramBuilder(f"pigeon-{family.name}{'-unary' if unary else ''}", 2)
    r, lenu, uval, fv, t = (b.reg() for _ in range(5))
    x1, x2, n1, pos, i, bit, w, mask = (b.reg() for _ in range(8))
    acc, rej, pair = b.label(), b.label(), b.label()

    if unary:
        b.emit("LOADLEN", r, 0)
    else:
        b.emit("LOADLEN", t, 0)
        b.emit("LT", t, b.const_reg(31), t)
        b.jnz(t, acc)  # |r| > 31: word guard, accept everything
        b.emit("LOADW", r, 0, b.const_reg(0))

    # range-violation branch on the numeric reading of u
    b.emit("LOADLEN", lenu, 1)
    b.emit("LT", t, b.const_reg(31), lenu)
    b.jnz(t, pair)
    b.emit("LOADW", uval, 1, b.const_reg(0))
    b.emit("LE", t, uval, r)
    b.jz(t, pair)
    family.emit(b, fv, r, uval)
    b.emit("LE", t, r, fv)
    b.jnz(t, acc)

    b.mark(pair)

    def decode_part(dest: int):
        """Unary length prefix then the value bits; MALFORMED jumps to rej."""
        b.emit("CONST", n1, 0)
        head = b.label()
        body = b.label()
        b.mark(head)
        b.emit("LOADBIT", bit, 1, pos)
        b.emit("LT", t, pos, lenu)
        b.jz(t, rej)  # ran past the end while reading the prefix
        b.jz(bit, body)
        b.emit("ADD", n1, n1, b.const_reg(1))
        b.emit("ADD", pos, pos, b.const_reg(1))
        b.jmp(head)
        b.mark(body)
        b.emit("ADD", pos, pos, b.const_reg(1))  # skip the 0 delimiter
        b.emit("LT", t, b.const_reg(31), n1)
        b.jnz(t, rej)
        b.emit("ADD", t, pos, n1)
        b.emit("LE", t, t, lenu)
        b.jz(t, rej)  # part runs past the end
        b.emit("LOADW", w, 1, pos)
        b.emit("SUB", mask, b.const_reg(32), n1)
        b.emit("SHRR", mask, b.const_reg(MASK), mask)
        b.emit("AND", dest, w, mask)
        b.emit("ADD", pos, pos, n1)

    b.emit("CONST", pos, 0)
    decode_part(x1)
    decode_part(x2)
    b.emit("EQ", t, pos, lenu)
    b.jz(t, rej)  # trailing bits: not a clean pair encoding
    b.emit("LE", t, x1, r)
    b.jz(t, rej)
    b.emit("LE", t, x2, r)
    b.jz(t, rej)
    b.emit("EQ", t, x1, x2)
    b.jnz(t, rej)  # the pair must be a genuine collision of distinct points
    family.emit(b, fv, r, x1)
    family.emit(b, uval, r, x2)
    b.emit("EQ", t, fv, uval)
    b.jnz(t, acc)
    b.jmp(rej)
    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")
    return b.finish(budget=PolyBound(12 + family.extra_steps // 2, 1, 80 + 2 * family.extra_steps))


def _pigeon_enumerator(
    family: PigeonFamily, unary: bool, bound: PolyBound
) -> Callable[[str], Iterator[str]]:
    """All accepted witness strings, exactly.

    A string read as a number is its minimal bit pattern plus trailing
    zeros, so the accepted set is finite and structured: padded value
    encodings that witness a range violation, plus pair encodings of
    collisions with arbitrarily zero-padded parts, up to the length bound.
    """

    def enumerate_witnesses(x: str) -> Iterator[str]:
        from ..vm.pack import encode_tuple

        r = len(x) if unary else bits_to_int(x)
        if not unary and len(x) > 31:
            # word guard: everything accepts; fall back to the tiny sweep
            raise ValueError("guarded instances accept every string")
        max_len = bound(len(x))
        out: set[str] = set()
        for v in range(r + 1):
            if (family.eval(r, v) & MASK) >= r:
                base = int_to_bits(v)
                for e in range(max_len - len(base) + 1):
                    out.add(base + "0" * e)
        values = {v: family.eval(r, v) & MASK for v in range(r + 1)}
        for a in range(r + 1):
            for c in range(r + 1):
                if a == c or values[a] != values[c]:
                    continue
                pa, pc = int_to_bits(a), int_to_bits(c)
                budget_len = max_len - (len(pa) + len(pc) + 2)
                for e1 in range(max(0, budget_len) + 1):
                    for e2 in range(max(0, budget_len) - e1 + 1):
                        u = encode_tuple((pa + "0" * e1, pc + "0" * e2))
                        if len(u) <= max_len:
                            out.add(u)
        yield from sorted(out, key=lambda s: (len(s), s))

    return enumerate_witnesses


def _factoring_enumerator(bound: PolyBound) -> Callable[[str], Iterator[str]]:
    def enumerate_witnesses(x: str) -> Iterator[str]:
        n = bits_to_int(x)
        max_len = bound(len(x))
        if n <= 1 or len(x) > 17 or _is_prime(n):
            from .problem import length_lex_strings

            yield from length_lex_strings(max_len)
            return
        out = []
        for m in range(2, n):
            if n % m == 0:
                base = int_to_bits(m)
                for e in range(max_len - len(base) + 1):
                    out.append(base + "0" * e)
        yield from sorted(set(out), key=lambda s: (len(s), s))

    return enumerate_witnesses


def _pigeon_reference(family: PigeonFamily, unary: bool) -> Callable[[str], str]:
    def solve(x: str) -> str:
        r = len(x) if unary else bits_to_int(x)
        if not unary and len(x) > 31:
            return ""
        seen: dict[int, int] = {}
        for u in range(r + 1):
            fv = family.eval(r, u) & MASK
            if fv >= r:
                return int_to_bits(u)
            if fv in seen:
                return _encode_pair_bits(seen[fv], u)
            seen[fv] = u
        raise TotalityViolation(f"pigeon-{family.name}", x)

    return solve


def _encode_pair_bits(a: int, bval: int) -> str:
    from ..vm.pack import encode_tuple

    return encode_tuple((int_to_bits(a), int_to_bits(bval)))


def pigeon_problem(family: PigeonFamily, unary: bool = False) -> TFNPProblem:
    """Collision search for f(r, .) on {0..r}; instance is r in binary, or
    (for the unary variant used by the shipped reduction) a string of
    length r."""
    bound = PolyBound(1, 1, 10) if unary else PolyBound(4, 1, 10)
    return TFNPProblem(
        name=f"pigeon-{family.name}{'-unary' if unary else ''}",
        bound=bound,
        verifier=_pigeon_verifier(family, unary),
        reference_solver=_pigeon_reference(family, unary),
        witness_enumerator=_pigeon_enumerator(family, unary, bound),
    )


# --------------------------------------------------------------------------
# HCS
# --------------------------------------------------------------------------

class UnsupportedSentence(ValueError):
    pass


@dataclass(frozen=True)
class HcsEncoding:
    """Instance/witness conventions for HCS(sentence).

    Instance: u16 tuple count n, u16 k, then n*k ground-term codes (u32),
    each code an index into the canonical Herbrand enumeration.  Anything
    not of this exact shape counts as the empty tuple list (total by
    convention).  Witness: one bit per atom *occurrence* (n per-tuple
    copies of the matrix's atom list, in order); the bit of an occurrence
    must be 0 unless the occurrence is the first with its ground atom, so
    assignments to the distinct-atom table correspond one-to-one with
    accepted witnesses.
    """

    sentence: UniversalSentence
    occ_vars: tuple[tuple[str, tuple[int, ...]], ...]  # (relation, var indices)

    @property
    def occ_count(self) -> int:
        return len(self.occ_vars)


def hcs_encoding(sentence: UniversalSentence) -> HcsEncoding:
    var_pos = {v: i for i, v in enumerate(sentence.variables)}
    occ = []
    for a in sentence.matrix.atoms():
        idxs = []
        for t in a.args:
            if t.args or t.head not in var_pos:
                raise UnsupportedSentence(
                    "bytecode verification supports atoms over plain variables; "
                    f"atom {a} has a compound or constant argument"
                )
            idxs.append(var_pos[t.head])
        occ.append((a.rel, tuple(idxs)))
    if len(occ) >= 32 * sentence.k:
        raise UnsupportedSentence(
            "matrix has too many atom occurrences for the witness-length bound"
        )
    return HcsEncoding(sentence, tuple(occ))


def encode_hcs_instance(sentence: UniversalSentence, tuples: Sequence[Sequence[Term]]) -> str:
    sig = sentence.signature
    k = sentence.k
    out = [int_to_bits(len(tuples), 16), int_to_bits(k, 16)]
    for tp in tuples:
        if len(tp) != k:
            raise ValueError(f"tuple arity {len(tp)} != {k}")
        for t in tp:
            out.append(int_to_bits(term_index(sig, t), 32))
    return "".join(out)


def decode_hcs_instance(
    sentence: UniversalSentence, bits: str, max_code: int = 1 << 16
) -> list[list[Term]] | None:
    """Term tuples, or None when the encoding is malformed (the problem
    then treats the instance as the empty tuple list)."""
    if len(bits) < 32:
        return None
    n = bits_to_int(bits[0:16])
    k = bits_to_int(bits[16:32])
    if k != sentence.k or len(bits) != 32 + 32 * n * k:
        return None
    sig = sentence.signature
    tuples = []
    pos = 32
    for _ in range(n):
        tp = []
        for _ in range(k):
            code = bits_to_int(bits[pos : pos + 32])
            pos += 32
            if code > max_code:
                raise ValueError(f"term code {code} beyond the decode guard {max_code}")
            term = term_at(sig, code)
            if term is None:
                return None
            tp.append(term)
        tuples.append(tp)
    return tuples


def hcs_occurrence_atoms(enc: HcsEncoding, gc: GroundConjunction) -> list:
    atoms = []
    for inst in gc.instances:
        atoms.extend(inst.atoms())
    return atoms


def sparse_witness_from_dense(enc: HcsEncoding, gc: GroundConjunction, dense: Sequence[bool]) -> str:
    """Canonical occurrence-keyed witness from a table assignment."""
    idx = gc.atom_index
    seen: set = set()
    out = []
    for a in hcs_occurrence_atoms(enc, gc):
        if a in seen:
            out.append("0")
        else:
            seen.add(a)
            out.append("1" if dense[idx[a]] else "0")
    return "".join(out)


def dense_witness_from_sparse(enc: HcsEncoding, gc: GroundConjunction, sparse: str) -> list[bool]:
    idx = gc.atom_index
    dense = [False] * len(gc.atom_table)
    seen: set = set()
    for pos, a in enumerate(hcs_occurrence_atoms(enc, gc)):
        if a not in seen:
            seen.add(a)
            if pos < len(sparse) and sparse[pos] == "1":
                dense[idx[a]] = True
    return dense


def _hcs_verifier(enc: HcsEncoding) -> VerifierProgram:
    sent = enc.sentence
    K = sent.k
    O = enc.occ_count
    finite = all(a == 0 for _, a in sent.signature.functions)
    n_const = len(sent.signature.constants())

    b = ProgramBuilder(f"hcs-{id(enc) & 0xffff:x}", 2)
    lenx, leny, n, t, t2 = (b.reg() for _ in range(5))
    i, j, ptr_i, ptr_j, fp, own, w = (b.reg() for _ in range(7))
    cur = b.regs(K)
    vbit = b.regs(O)
    acc, rej = b.label(), b.label()

    b.emit("LOADLEN", lenx, 0)
    b.emit("LT", t, lenx, b.const_reg(32))
    b.jnz(t, acc)  # malformed: empty tuple list, every witness accepted
    b.emit("LOADW", w, 0, b.const_reg(0))
    b.emit("AND", n, w, b.const_reg(U16))
    b.emit("SHR", t, w, 16)
    b.emit("EQ", t, t, b.const_reg(K))
    b.jz(t, acc)
    b.emit("MUL", t2, n, b.const_reg(32 * K))
    b.emit("ADD", t2, t2, b.const_reg(32))
    b.emit("EQ", t, lenx, t2)
    b.jz(t, acc)
    if finite:
        # codes must name one of the finitely many ground terms
        chk_loop, chk_done = b.label(), b.label()
        b.emit("CONST", j, 32)
        b.mark(chk_loop)
        b.emit("EQ", t, j, lenx)
        b.jnz(t, chk_done)
        b.emit("LOADW", w, 0, j)
        b.emit("LT", t, w, b.const_reg(n_const))
        b.jz(t, acc)
        b.emit("ADD", j, j, b.const_reg(32))
        b.jmp(chk_loop)
        b.mark(chk_done)
    b.emit("LOADLEN", leny, 1)
    b.emit("MUL", t, n, b.const_reg(O))
    b.emit("EQ", t, leny, t)
    b.jz(t, rej)  # witness must carry exactly one bit per occurrence

    iloop = b.label()
    b.emit("CONST", i, 0)
    b.emit("CONST", ptr_i, 32)
    b.mark(iloop)
    b.emit("EQ", t, i, n)
    b.jnz(t, acc)
    for v in range(K):
        b.emit("ADD", t, ptr_i, b.const_reg(32 * v))
        b.emit("LOADW", cur[v], 0, t)

    for o, (rel, ovars) in enumerate(enc.occ_vars):
        found = b.label()
        after = b.label()
        same_rel = [
            (o2, v2) for o2, (r2, v2) in enumerate(enc.occ_vars) if r2 == rel
        ]
        jloop, self_blk = b.label(), b.label()
        b.emit("CONST", j, 0)
        b.emit("CONST", ptr_j, 32)
        b.mark(jloop)
        b.emit("EQ", t, j, i)
        b.jnz(t, self_blk)
        for o2, v2 in same_rel:
            skip = b.label()
            for a in range(len(ovars)):
                b.emit("ADD", t2, ptr_j, b.const_reg(32 * v2[a]))
                b.emit("LOADW", w, 0, t2)
                b.emit("EQ", t, w, cur[ovars[a]])
                b.jz(t, skip)
            b.emit("MUL", fp, j, b.const_reg(O))
            b.emit("ADD", fp, fp, b.const_reg(o2))
            b.jmp(found)
            b.mark(skip)
        b.emit("ADD", j, j, b.const_reg(1))
        b.emit("ADD", ptr_j, ptr_j, b.const_reg(32 * K))
        b.jmp(jloop)

        b.mark(self_blk)
        for o2, v2 in same_rel:
            if o2 >= o:
                break
            skip = b.label()
            for a in range(len(ovars)):
                b.emit("EQ", t, cur[v2[a]], cur[ovars[a]])
                b.jz(t, skip)
            b.emit("MUL", fp, i, b.const_reg(O))
            b.emit("ADD", fp, fp, b.const_reg(o2))
            b.jmp(found)
            b.mark(skip)
        # first occurrence of this ground atom: its own bit is free
        b.emit("MUL", fp, i, b.const_reg(O))
        b.emit("ADD", fp, fp, b.const_reg(o))
        b.emit("LOADBIT", vbit[o], 1, fp)
        b.jmp(after)

        b.mark(found)
        b.emit("LOADBIT", vbit[o], 1, fp)
        # canonical form: a repeated occurrence carries a zero bit
        b.emit("MUL", own, i, b.const_reg(O))
        b.emit("ADD", own, own, b.const_reg(o))
        b.emit("LOADBIT", t, 1, own)
        b.jnz(t, rej)
        b.mark(after)

    res = _emit_skeleton(b, sent.matrix, enc, vbit, t, t2)
    b.jz(res, rej)
    b.emit("ADD", i, i, b.const_reg(1))
    b.emit("ADD", ptr_i, ptr_i, b.const_reg(32 * K))
    b.jmp(iloop)

    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")
    return b.finish(budget=PolyBound(2, 2, 192))


def _emit_skeleton(
    b: ProgramBuilder, m: Matrix, enc: HcsEncoding, vbit: list[int], t: int, t2: int
) -> int:
    """Boolean ops of the matrix over the occurrence-bit registers."""
    counter = itertools.count()
    free: list[int] = []

    def alloc() -> int:
        return free.pop() if free else b.reg()

    def gen(node: Matrix) -> int:
        if node.op == ATOM:
            return vbit[next(counter)]
        if node.op == FALSUM:
            return b.const_reg(0)
        if node.op == "not":
            a = gen(node.children[0])
            r = alloc()
            b.emit("XOR", r, a, b.const_reg(1))
            _maybe_free(a)
            return r
        x = gen(node.children[0])
        y = gen(node.children[1])
        r = alloc()
        if node.op == "and":
            b.emit("AND", r, x, y)
        elif node.op == "or":
            b.emit("OR", r, x, y)
        else:  # implies
            b.emit("XOR", r, x, b.const_reg(1))
            b.emit("OR", r, r, y)
        _maybe_free(x)
        _maybe_free(y)
        return r

    def _maybe_free(reg: int):
        if reg not in vbit and reg not in (b.const_reg(0), b.const_reg(1)):
            free.append(reg)

    return gen(m)


def hcs_problem(sentence: UniversalSentence, max_code: int = 1 << 16) -> TFNPProblem:
    """Herbrand consistency search for a consistent universal sentence.

    The caller vouches for consistency (the paper's precondition); on an
    inconsistent sentence the reference solver raises TotalityViolation
    when an expansion refutes it.
    """
    enc = hcs_encoding(sentence)

    def expansion(x: str) -> tuple[GroundConjunction, bool]:
        tuples = decode_hcs_instance(sentence, x, max_code)
        if tuples is None:
            return herbrand_expand(sentence, []), True
        return herbrand_expand(sentence, tuples), False

    def reference(x: str) -> str:
        gc, malformed = expansion(x)
        if malformed or not gc.instances:
            return ""
        t = tseitin(gc.to_prop_formula())
        res = sat_solve(t.cnf)
        if res.status != SAT:
            raise TotalityViolation("hcs", x)
        dense = [False] * len(gc.atom_table)
        proj = t.project_model(res.assignment)
        for a, i in gc.atom_index.items():
            dense[i] = proj.get(i + 1, False)
        return sparse_witness_from_dense(enc, gc, dense)

    def enumerator(x: str) -> Iterator[str]:
        gc, malformed = expansion(x)
        if malformed:
            raise ValueError("cannot enumerate witnesses of a malformed instance")
        tbl = len(gc.atom_table)
        if tbl > 24:
            raise ValueError(f"{tbl} atoms is beyond the enumeration guard")
        f = gc.to_prop_formula()
        lanes = _formula_lanes(f, tbl)
        for v in np.flatnonzero(lanes):
            dense = [(int(v) >> i) & 1 == 1 for i in range(tbl)]
            yield sparse_witness_from_dense(enc, gc, dense)

    prob = TFNPProblem(
        name=f"hcs-{'-'.join(sentence.signature.rel_arity)}-{sentence.k}",
        bound=PolyBound(1, 1, 0),
        verifier=_hcs_verifier(enc),
        reference_solver=reference,
        witness_enumerator=enumerator,
    )
    return prob


def _formula_lanes(f, n_vars: int) -> np.ndarray:
    """Truth lanes of a PropFormula over all 2^n assignments (var i+1 at bit i)."""
    n = 1 << n_vars
    idx = np.arange(n)

    def walk(node) -> np.ndarray:
        if node.op == "var":
            return ((idx >> (node.index - 1)) & 1).astype(bool)
        if node.op == "const":
            return np.full(n, node.value)
        if node.op == "not":
            return ~walk(node.args[0])
        if node.op == "and":
            return walk(node.args[0]) & walk(node.args[1])
        return walk(node.args[0]) | walk(node.args[1])

    return walk(f)
