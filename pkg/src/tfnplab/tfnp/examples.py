"""Shipped example material: the hand-built reduction from the unary
pigeonhole problem into Herbrand consistency search, and the small exact
problems used by the completion and canonical-pair batteries.

The reduction's sentence (over constant z, successor s, relations Hole
and Coll) is

    forall x,y,u,v. Hole(x,y) & Hole(u,v)
                    & ((Hole(x,v) & Hole(u,v)) -> Coll(x,u))

which is consistent (interpret both relations as total).  Mapping r to
the tuples (a, f(a), b, f(b)) for all a < b <= r, with f(n) = n mod 2 as
numerals, forces Hole(a, f(a)) true in every satisfying assignment; when
f(a) = f(b) the hypothesis atoms of the third conjunct coincide with
forced ones, so Coll(a, b) is forced as well.  The witness back-mapper
scans the Coll occurrence bits and returns the first flagged pair that
really collides, falling back to a range-violation scan, so it is sound
for every satisfying assignment and complete by the forcing argument.
"""

from __future__ import annotations

from ..fol.syntax import Signature, UniversalSentence, atom, m_and, m_implies, Term
from ..vm.build import ProgramBuilder
from ..vm.isa import PolyBound, VerifierProgram
from .problem import TFNPProblem
from .problems import PigeonFamily, hcs_problem, pigeon_problem, standard_families
from .reductions import ManyOneReduction, TuringReduction

PHP_SIGNATURE = Signature(
    functions=(("z", 0), ("s", 1)),
    relations=(("Hole", 2), ("Coll", 2)),
)

_X, _Y, _U, _V = (Term(v) for v in ("x", "y", "u", "v"))

PHP_SENTENCE = UniversalSentence(
    PHP_SIGNATURE,
    ("x", "y", "u", "v"),
    m_and(
        m_and(atom("Hole", _X, _Y), atom("Hole", _U, _V)),
        m_implies(
            m_and(atom("Hole", _X, _V), atom("Hole", _U, _V)),
            atom("Coll", _X, _U),
        ),
    ),
)

_COLL_OCC = 4  # position of Coll(x,u) in the matrix's atom order
_OCC_COUNT = 5

ORD_SIGNATURE = Signature(functions=(("c", 0), ("f", 1)), relations=(("R", 2),))


def order_sentence() -> UniversalSentence:
    from ..fol.syntax import m_not, parse_sentence

    return parse_sentence(
        "forall x,y,z. ~R(x,x) & (R(x,y) & R(y,z) -> R(x,z))", ORD_SIGNATURE
    )


def _emit_u(b: ProgramBuilder, val: int, width: int, tmp: int, bit: int, i: int, t: int):
    """EMIT the low `width` bits of register val (clobbers tmp, bit, i, t)."""
    loop, done = b.label(), b.label()
    b.emit("MOV", tmp, val)
    b.emit("CONST", i, 0)
    b.mark(loop)
    b.emit("EQ", t, i, b.const_reg(width))
    b.jnz(t, done)
    b.emit("AND", bit, tmp, b.const_reg(1))
    b.emit("EMIT", bit)
    b.emit("SHR", tmp, tmp, 1)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(loop)
    b.mark(done)


def _emit_minimal(b: ProgramBuilder, val: int, tmp: int, bit: int, i: int, t: int, ln: int):
    """EMIT the unary-prefixed minimal encoding of register val."""
    mlen, mdone = b.label(), b.label()
    pfx, pdone = b.label(), b.label()
    body, bdone = b.label(), b.label()
    b.emit("MOV", tmp, val)
    b.emit("CONST", ln, 0)
    b.mark(mlen)
    b.jz(tmp, mdone)
    b.emit("ADD", ln, ln, b.const_reg(1))
    b.emit("SHR", tmp, tmp, 1)
    b.jmp(mlen)
    b.mark(mdone)
    b.emit("CONST", i, 0)
    b.mark(pfx)
    b.emit("EQ", t, i, ln)
    b.jnz(t, pdone)
    b.emit("EMIT", b.const_reg(1))
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(pfx)
    b.mark(pdone)
    b.emit("EMIT", b.const_reg(0))
    b.emit("MOV", tmp, val)
    b.emit("CONST", i, 0)
    b.mark(body)
    b.emit("EQ", t, i, ln)
    b.jnz(t, bdone)
    b.emit("AND", bit, tmp, b.const_reg(1))
    b.emit("EMIT", bit)
    b.emit("SHR", tmp, tmp, 1)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(body)
    b.mark(bdone)


def _php_instance_program() -> VerifierProgram:
    """f: unary r to the encoded tuple family (a, a mod 2, b, b mod 2)
    for all a < b <= r, in pair order."""
    b = ProgramBuilder("php-to-hcs-f", 1)
    r, nt, a, bb, val, tmp, bit, i, t = (b.reg() for _ in range(9))
    b.emit("LOADLEN", r, 0)
    b.emit("ADD", t, r, b.const_reg(1))
    b.emit("MUL", nt, r, t)
    b.emit("SHR", nt, nt, 1)
    _emit_u(b, nt, 16, tmp, bit, i, t)
    b.emit("CONST", val, 4)
    _emit_u(b, val, 16, tmp, bit, i, t)
    aloop, adone, bloop, bdone = b.label(), b.label(), b.label(), b.label()
    b.emit("CONST", a, 0)
    b.mark(aloop)
    b.emit("LT", t, a, r)
    b.jz(t, adone)
    b.emit("ADD", bb, a, b.const_reg(1))
    b.mark(bloop)
    b.emit("LE", t, bb, r)
    b.jz(t, bdone)
    _emit_u(b, a, 32, tmp, bit, i, t)
    b.emit("AND", val, a, b.const_reg(1))
    _emit_u(b, val, 32, tmp, bit, i, t)
    _emit_u(b, bb, 32, tmp, bit, i, t)
    b.emit("AND", val, bb, b.const_reg(1))
    _emit_u(b, val, 32, tmp, bit, i, t)
    b.emit("ADD", bb, bb, b.const_reg(1))
    b.jmp(bloop)
    b.mark(bdone)
    b.emit("ADD", a, a, b.const_reg(1))
    b.jmp(aloop)
    b.mark(adone)
    b.emit("ACCEPT")
    return b.finish(budget=PolyBound(600, 2, 1600))


def _php_witness_program() -> VerifierProgram:
    """g: scan the Coll occurrence bits of the assignment for a flagged
    pair that really collides under f(n) = n mod 2; emit it pair-encoded.
    Falls back to a range-violation value (only needed for r <= 1)."""
    b = ProgramBuilder("php-to-hcs-g", 2)
    r, a, bb, tcnt, occ, bit, t, fa, fb = (b.reg() for _ in range(9))
    tmp, i, ln = b.reg(), b.reg(), b.reg()
    aloop, adone, bloop, bdone = b.label(), b.label(), b.label(), b.label()
    hit, fall, fdone, out = b.label(), b.label(), b.label(), b.label()

    b.emit("LOADLEN", r, 0)
    b.emit("CONST", tcnt, 0)
    b.emit("CONST", a, 0)
    b.mark(aloop)
    b.emit("LT", t, a, r)
    b.jz(t, adone)
    b.emit("ADD", bb, a, b.const_reg(1))
    b.mark(bloop)
    b.emit("LE", t, bb, r)
    b.jz(t, bdone)
    b.emit("MUL", occ, tcnt, b.const_reg(_OCC_COUNT))
    b.emit("ADD", occ, occ, b.const_reg(_COLL_OCC))
    b.emit("LOADBIT", bit, 1, occ)
    skip = b.label()
    b.jz(bit, skip)
    b.emit("AND", fa, a, b.const_reg(1))
    b.emit("AND", fb, bb, b.const_reg(1))
    b.emit("EQ", t, fa, fb)
    b.jnz(t, hit)
    b.mark(skip)
    b.emit("ADD", tcnt, tcnt, b.const_reg(1))
    b.emit("ADD", bb, bb, b.const_reg(1))
    b.jmp(bloop)
    b.mark(bdone)
    b.emit("ADD", a, a, b.const_reg(1))
    b.jmp(aloop)
    b.mark(adone)
    # fallback: some u <= r with f(u) >= r (exists whenever no collision does)
    b.emit("CONST", a, 0)
    b.mark(fall)
    b.emit("LE", t, a, r)
    b.jz(t, fdone)
    b.emit("AND", fa, a, b.const_reg(1))
    b.emit("LE", t, r, fa)
    rng = b.label()
    b.jnz(t, rng)
    b.emit("ADD", a, a, b.const_reg(1))
    b.jmp(fall)
    b.mark(rng)
    _emit_u_minimal = _emit_minimal  # bare value: emit just the bits, no prefix
    mlen, mdone, body, bdone2 = b.label(), b.label(), b.label(), b.label()
    b.emit("MOV", tmp, a)
    b.emit("CONST", ln, 0)
    b.mark(mlen)
    b.jz(tmp, mdone)
    b.emit("ADD", ln, ln, b.const_reg(1))
    b.emit("SHR", tmp, tmp, 1)
    b.jmp(mlen)
    b.mark(mdone)
    b.emit("MOV", tmp, a)
    b.emit("CONST", i, 0)
    b.mark(body)
    b.emit("EQ", t, i, ln)
    b.jnz(t, bdone2)
    b.emit("AND", bit, tmp, b.const_reg(1))
    b.emit("EMIT", bit)
    b.emit("SHR", tmp, tmp, 1)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(body)
    b.mark(bdone2)
    b.mark(fdone)
    b.jmp(out)
    b.mark(hit)
    _emit_minimal(b, a, tmp, bit, i, t, ln)
    _emit_minimal(b, bb, tmp, bit, i, t, ln)
    b.mark(out)
    b.emit("ACCEPT")
    return b.finish(budget=PolyBound(24, 2, 240))


def pigeon_to_hcs() -> tuple[ManyOneReduction, TFNPProblem, TFNPProblem]:
    """(reduction, source, target): unary mod-2 pigeonhole into
    HCS(PHP_SENTENCE)."""
    family = next(f for f in standard_families() if f.name == "mod2")
    source = pigeon_problem(family, unary=True)
    target = hcs_problem(PHP_SENTENCE)
    red = ManyOneReduction("pigeon-to-hcs", _php_instance_program(), _php_witness_program())
    return red, source, target


# --------------------------------------------------------------------------
# small exact problems for the completion and canonical-pair batteries
# --------------------------------------------------------------------------

def _match_problem(name: str, flip: bool) -> TFNPProblem:
    """Witness = x (copy) or bitwise complement of x (xorflip); unique."""
    b = ProgramBuilder(name, 2)
    lx, ly, i, b0, b1, t = (b.reg() for _ in range(6))
    acc, rej, loop = b.label(), b.label(), b.label()
    b.emit("LOADLEN", lx, 0)
    b.emit("LOADLEN", ly, 1)
    b.emit("EQ", t, lx, ly)
    b.jz(t, rej)
    b.emit("CONST", i, 0)
    b.mark(loop)
    b.emit("EQ", t, i, lx)
    b.jnz(t, acc)
    b.emit("LOADBIT", b0, 0, i)
    b.emit("LOADBIT", b1, 1, i)
    b.emit("XOR" if flip else "EQ", t, b0, b1)
    b.jz(t, rej)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(loop)
    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")
    prog = b.finish(budget=PolyBound(7, 1, 16))

    if flip:
        solvefn = lambda x: "".join("0" if c == "1" else "1" for c in x)
    else:
        solvefn = lambda x: x
    return TFNPProblem(
        name,
        PolyBound(1, 1, 0),
        prog,
        reference_solver=solvefn,
        witness_enumerator=lambda x: [solvefn(x)],
    )


def xorflip_problem() -> TFNPProblem:
    return _match_problem("xorflip", flip=True)


def copy_problem() -> TFNPProblem:
    return _match_problem("copy", flip=False)


def _emit_query_of_input(b, lx, i, bit, t):
    loop, done = b.label(), b.label()
    b.emit("CONST", i, 0)
    b.mark(loop)
    b.emit("EQ", t, i, lx)
    b.jnz(t, done)
    b.emit("LOADBIT", bit, 0, i)
    b.emit("QPUSH", bit)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(loop)
    b.mark(done)


def _emit_answer(b, count, i, bit, t):
    loop, done = b.label(), b.label()
    b.emit("CONST", i, 0)
    b.mark(loop)
    b.emit("EQ", t, i, count)
    b.jnz(t, done)
    b.emit("ABIT", bit, i)
    b.emit("EMIT", bit)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(loop)
    b.mark(done)


def query_once_reduction() -> TuringReduction:
    """Query x, return the (padded) answer verbatim: the trivial oracle
    reduction from the padded target to the target itself."""
    b = ProgramBuilder("query-once", 1)
    lx, i, bit, t, aw = (b.reg() for _ in range(5))
    b.emit("LOADLEN", lx, 0)
    _emit_query_of_input(b, lx, i, bit, t)
    b.emit("QUERY")
    b.emit("ADD", aw, lx, b.const_reg(1))
    _emit_answer(b, aw, i, bit, t)
    b.emit("ACCEPT")
    prog = b.finish(budget=PolyBound(10, 1, 32))
    return TuringReduction("query-once", prog, PolyBound(1, 1, 0), PolyBound(1, 1, 1))


def two_query_reduction() -> TuringReduction:
    """Adaptive double flip: query x, re-query the unpadded answer, and
    emit the second padded answer (which is x 1, a padded copy witness)."""
    b = ProgramBuilder("two-query", 1)
    lx, i, bit, t, aw = (b.reg() for _ in range(5))
    loop2, done2 = b.label(), b.label()
    b.emit("LOADLEN", lx, 0)
    _emit_query_of_input(b, lx, i, bit, t)
    b.emit("QUERY")
    b.emit("CONST", i, 0)
    b.mark(loop2)
    b.emit("EQ", t, i, lx)
    b.jnz(t, done2)
    b.emit("ABIT", bit, i)
    b.emit("QPUSH", bit)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(loop2)
    b.mark(done2)
    b.emit("QUERY")
    b.emit("ADD", aw, lx, b.const_reg(1))
    _emit_answer(b, aw, i, bit, t)
    b.emit("ACCEPT")
    prog = b.finish(budget=PolyBound(16, 1, 40))
    return TuringReduction("two-query", prog, PolyBound(1, 1, 0), PolyBound(1, 1, 1))


def zero_query_reduction() -> TuringReduction:
    """Solves the padded xorflip problem outright, no oracle calls."""
    b = ProgramBuilder("zero-query", 1)
    lx, i, bit, t = (b.reg() for _ in range(4))
    loop, done = b.label(), b.label()
    b.emit("LOADLEN", lx, 0)
    b.emit("CONST", i, 0)
    b.mark(loop)
    b.emit("EQ", t, i, lx)
    b.jnz(t, done)
    b.emit("LOADBIT", bit, 0, i)
    b.emit("XOR", bit, bit, b.const_reg(1))
    b.emit("EMIT", bit)
    b.emit("ADD", i, i, b.const_reg(1))
    b.jmp(loop)
    b.mark(done)
    b.emit("EMIT", b.const_reg(1))
    b.emit("ACCEPT")
    prog = b.finish(budget=PolyBound(9, 1, 24))
    return TuringReduction("zero-query", prog, PolyBound(1, 1, 0), PolyBound(1, 1, 1))
