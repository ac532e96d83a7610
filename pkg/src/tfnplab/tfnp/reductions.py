"""Many-one and oracle reductions between search problems, padding
normalization, and the flattening of witnessed (NP-style) relations.

The soundness contract of a many-one reduction (f, g) is universally
quantified: for every z solving the target instance f(x), the mapped
witness g(x, z) must solve x.  check_many_one enforces exactly that on a
declared instance domain by enumerating all target witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..vm.build import (
    DirectView,
    ProgramBuilder,
    WindowView,
    emit_decode_window,
    inline_program,
)
from ..vm.isa import PolyBound, VerifierProgram, run
from .problem import SearchSpaceTooLarge, TFNPProblem, enumerate_witnesses, verify_solution


class ReductionUnsound(AssertionError):
    pass


@dataclass(frozen=True)
class HostTransformer:
    """Host-level stand-in for a transformer program, with the poly-time
    argument recorded; used where the output embeds machine-built
    artifacts (compiled circuits) that would bloat bytecode pointlessly."""

    name: str
    arity: int
    fn: Callable[..., str] = field(compare=False)
    note: str = ""


Transformer = VerifierProgram | HostTransformer


def apply_transformer(t: Transformer, inputs: Sequence[str]) -> str:
    if isinstance(t, VerifierProgram):
        return run(t, inputs).output
    if len(inputs) != t.arity:
        raise ValueError(f"{t.name} expects {t.arity} inputs")
    return t.fn(*inputs)


@dataclass(frozen=True)
class ManyOneReduction:
    """Instance transformer f and witness back-mapper g with
    S(f(x), z) => R(x, g(x, z))."""

    name: str
    f: Transformer  # arity 1: x -> target instance
    g: Transformer  # arity 2: (x, z) -> source witness

    def map_instance(self, x: str) -> str:
        return apply_transformer(self.f, (x,))

    def map_witness(self, x: str, z: str) -> str:
        return apply_transformer(self.g, (x, z))


@dataclass(frozen=True)
class TuringReduction:
    """Polynomial-time oracle program solving `source` instances with an
    oracle returning (padded) witnesses for `target`.  The program must
    push exactly query_bound(|x|) bits per query and emit exactly
    output_bound(|x|) witness bits."""

    name: str
    program: VerifierProgram  # arity 1, oracle instructions, EMITs the witness
    query_bound: PolyBound  # query width as a function of |x|
    output_bound: PolyBound  # emitted witness width as a function of |x|

    def __post_init__(self):
        if self.program.arity != 1:
            raise ValueError("a Turing reduction is an arity-1 oracle program")


def apply_many_one(
    red: ManyOneReduction, source: TFNPProblem, target_solver: Callable[[str], str], x: str
) -> str:
    """Solve x through the reduction; raises ReductionUnsound when the
    mapped-back witness fails the source verifier."""
    z = target_solver(red.map_instance(x))
    y = red.map_witness(x, z)
    if not verify_solution(source, x, y):
        raise ReductionUnsound(
            f"{red.name}: mapped witness {y!r} fails on instance {x!r}"
        )
    return y


@dataclass(frozen=True)
class InstanceCheck:
    instance: str
    witnesses: int
    failures: tuple[tuple[str, str], ...]  # (z, g(x,z)) pairs that failed


@dataclass(frozen=True)
class CheckReport:
    reduction: str
    source: str
    target: str
    instances: tuple[InstanceCheck, ...]
    passed: bool
    note: str = ""

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        total_w = sum(c.witnesses for c in self.instances)
        msg = (
            f"{status} {self.reduction}: {self.source} -> {self.target}, "
            f"{len(self.instances)} instances, {total_w} target witnesses checked"
        )
        for c in self.instances:
            if c.failures:
                z, y = c.failures[0]
                msg += f"; counterexample x={c.instance!r} z={z!r} g={y!r}"
                break
        return msg


def check_many_one(
    red: ManyOneReduction,
    source: TFNPProblem,
    target: TFNPProblem,
    domain: Iterable[str],
    sweep_limit: int = 1 << 20,
    max_recorded_failures: int = 4,
) -> CheckReport:
    """The universally-quantified witness check over a domain of source
    instances: every target witness of f(x) must map back to a valid
    source witness."""
    rows = []
    ok = True
    for x in domain:
        fx = red.map_instance(x)
        failures = []
        count = 0
        for z in enumerate_witnesses(target, fx, sweep_limit):
            count += 1
            y = red.map_witness(x, z)
            if not verify_solution(source, x, y):
                ok = False
                if len(failures) < max_recorded_failures:
                    failures.append((z, y))
        if count == 0:
            ok = False  # target not total on the mapped instance
        rows.append(InstanceCheck(x, count, tuple(failures)))
    return CheckReport(red.name, source.name, target.name, tuple(rows), ok)


def identity_reduction(problem: TFNPProblem) -> ManyOneReduction:
    """f = id, g(x, z) = z."""
    bf = ProgramBuilder(f"id-f-{problem.name}", 1)
    ln, i, bit, t = bf.reg(), bf.reg(), bf.reg(), bf.reg()
    loop, done = bf.label(), bf.label()
    bf.emit("LOADLEN", ln, 0)
    bf.emit("CONST", i, 0)
    bf.mark(loop)
    bf.emit("EQ", t, i, ln)
    bf.jnz(t, done)
    bf.emit("LOADBIT", bit, 0, i)
    bf.emit("EMIT", bit)
    bf.emit("ADD", i, i, bf.const_reg(1))
    bf.jmp(loop)
    bf.mark(done)
    bf.emit("ACCEPT")
    f = bf.finish(budget=PolyBound(6, 1, 8))

    bg = ProgramBuilder(f"id-g-{problem.name}", 2)
    ln, i, bit, t = bg.reg(), bg.reg(), bg.reg(), bg.reg()
    loop, done = bg.label(), bg.label()
    bg.emit("LOADLEN", ln, 1)
    bg.emit("CONST", i, 0)
    bg.mark(loop)
    bg.emit("EQ", t, i, ln)
    bg.jnz(t, done)
    bg.emit("LOADBIT", bit, 1, i)
    bg.emit("EMIT", bit)
    bg.emit("ADD", i, i, bg.const_reg(1))
    bg.jmp(loop)
    bg.mark(done)
    bg.emit("ACCEPT")
    g = bg.finish(budget=PolyBound(6, 1, 8))
    return ManyOneReduction(f"identity-{problem.name}", f, g)


def broken_reduction(problem: TFNPProblem) -> ManyOneReduction:
    """Negative control: g drops the last witness bit."""
    base = identity_reduction(problem)
    bg = ProgramBuilder(f"broken-g-{problem.name}", 2)
    ln, i, bit, t = bg.reg(), bg.reg(), bg.reg(), bg.reg()
    loop, done = bg.label(), bg.label()
    bg.emit("LOADLEN", ln, 1)
    bg.emit("SUB", ln, ln, bg.const_reg(1))  # wraps on empty: loop exits at once
    bg.emit("LOADLEN", t, 1)
    bg.jz(t, done)
    bg.emit("CONST", i, 0)
    bg.mark(loop)
    bg.emit("EQ", t, i, ln)
    bg.jnz(t, done)
    bg.emit("LOADBIT", bit, 1, i)
    bg.emit("EMIT", bit)
    bg.emit("ADD", i, i, bg.const_reg(1))
    bg.jmp(loop)
    bg.mark(done)
    bg.emit("ACCEPT")
    g = bg.finish(budget=PolyBound(6, 1, 16))
    return ManyOneReduction(f"broken-{problem.name}", base.f, g)


# --------------------------------------------------------------------------
# padding normalization: all witnesses the same length
# --------------------------------------------------------------------------

def pad_witness(y: str, length: int) -> str:
    if len(y) >= length:
        raise ValueError(f"witness of {len(y)} bits cannot pad to {length}")
    return y + "1" + "0" * (length - len(y) - 1)


def unpad_witness(padded: str) -> str:
    stripped = padded.rstrip("0")
    if not stripped or stripped[-1] != "1":
        raise ValueError("not a padded witness: missing marker bit")
    return stripped[:-1]


def _combine_budget(inner: PolyBound, extra_c: int, extra_d: int, k_floor: int = 1) -> PolyBound:
    return PolyBound(inner.c + extra_c, max(inner.k, k_floor), inner.d + extra_d)


def _emit_poly(b: ProgramBuilder, p: PolyBound, n_reg: int, dest: int, t: int):
    """dest := c * n^k + d over 32-bit words."""
    b.emit("CONST", dest, 1)
    for _ in range(p.k):
        b.emit("MUL", dest, dest, n_reg)
    b.emit("MUL", dest, dest, b.const_reg(p.c))
    b.emit("ADD", dest, dest, b.const_reg(p.d))


def normalize_padding(problem: TFNPProblem) -> TFNPProblem:
    """Same problem with every witness padded to exactly p(|x|) + 1 bits
    as y 1 0...0; witness sets are in bijection with the original's."""
    p = problem.bound
    bv = ProgramBuilder(f"{problem.name}-padded", 2)
    lenx, leny, L, j, bit, t, res = (bv.reg() for _ in range(7))
    off = bv.reg()
    scr = (bv.reg(), bv.reg(), bv.reg())
    acc, rej, scan, found = bv.label(), bv.label(), bv.label(), bv.label()

    bv.emit("LOADLEN", lenx, 0)
    bv.emit("LT", t, bv.const_reg(1 << 12), lenx)
    bv.jnz(t, acc)  # word guard on the length polynomial
    _emit_poly(bv, p, lenx, L, t)
    bv.emit("ADD", L, L, bv.const_reg(1))
    bv.emit("LOADLEN", leny, 1)
    bv.emit("EQ", t, leny, L)
    bv.jz(t, rej)
    bv.emit("MOV", j, L)
    bv.mark(scan)
    bv.jz(j, rej)  # all zeros: no marker bit
    bv.emit("SUB", j, j, bv.const_reg(1))
    bv.emit("LOADBIT", bit, 1, j)
    bv.jnz(bit, found)
    bv.jmp(scan)
    bv.mark(found)
    bv.emit("CONST", off, 0)
    inline_program(
        bv,
        problem.verifier,
        [DirectView(0), WindowView(1, off, j, scr)],
        res,
    )
    bv.jnz(res, acc)
    bv.jmp(rej)
    bv.mark(acc)
    bv.emit("ACCEPT")
    bv.mark(rej)
    bv.emit("REJECT")
    verifier = bv.finish(
        budget=_combine_budget(problem.verifier.budget, 8 * (p.c + 1) + 24, 8 * p.d + 160)
    )

    padded_bound = PolyBound(p.c, p.k, p.d + 1)

    ref = None
    if problem.reference_solver is not None:
        def ref(x: str, _p=problem, _pb=padded_bound) -> str:
            return pad_witness(_p.reference_solver(x), _pb(len(x)))

    enum = None
    if problem.witness_enumerator is not None:
        def enum(x: str, _p=problem, _pb=padded_bound):
            for y in _p.witness_enumerator(x):
                yield pad_witness(y, _pb(len(x)))

    return TFNPProblem(
        name=f"{problem.name}-padded",
        bound=padded_bound,
        verifier=verifier,
        reference_solver=ref,
        witness_enumerator=enum,
    )


# --------------------------------------------------------------------------
# flattening witnessed relations: R(x, y, z) -> Q(x, (y, z))
# --------------------------------------------------------------------------

def build_pair_witness_problem(
    name: str,
    relation: VerifierProgram,
    y_bound: PolyBound,
    z_bound: PolyBound,
    reference_solver=None,
    witness_enumerator=None,
) -> TFNPProblem:
    """Search problem whose witnesses are encoded pairs (y, z) accepted by
    the arity-3 relation; malformed pairs reject."""
    if relation.arity != 3:
        raise ValueError("flattening expects an arity-3 relation")
    b = ProgramBuilder(name, 2)
    lenu, pos, bit, t, res = (b.reg() for _ in range(5))
    off_y, n_y, off_z, n_z, by, bz = (b.reg() for _ in range(6))
    scr_y = (b.reg(), b.reg(), b.reg())
    scr_z = (b.reg(), b.reg(), b.reg())
    lenx = b.reg()
    acc, rej = b.label(), b.label()

    b.emit("LOADLEN", lenu, 1)
    b.emit("CONST", pos, 0)
    emit_decode_window(b, 1, pos, lenu, off_y, n_y, bit, t, rej)
    emit_decode_window(b, 1, pos, lenu, off_z, n_z, bit, t, rej)
    b.emit("EQ", t, pos, lenu)
    b.jz(t, rej)
    b.emit("LOADLEN", lenx, 0)
    b.emit("LT", t, b.const_reg(1 << 12), lenx)
    b.jnz(t, rej)  # word guard for the bound polynomials
    _emit_poly(b, y_bound, lenx, by, t)
    b.emit("LE", t, n_y, by)
    b.jz(t, rej)
    _emit_poly(b, z_bound, lenx, bz, t)
    b.emit("LE", t, n_z, bz)
    b.jz(t, rej)
    inline_program(
        b,
        relation,
        [DirectView(0), WindowView(1, off_y, n_y, scr_y), WindowView(1, off_z, n_z, scr_z)],
        res,
    )
    b.jnz(res, acc)
    b.jmp(rej)
    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")
    verifier = b.finish(
        budget=_combine_budget(
            relation.budget, 8 * (y_bound.c + z_bound.c + 2) + 40, 8 * (y_bound.d + z_bound.d) + 220
        )
    )
    total = PolyBound(
        2 * (y_bound.c + z_bound.c),
        max(y_bound.k, z_bound.k),
        2 * (y_bound.d + z_bound.d) + 2,
    )
    return TFNPProblem(
        name=name,
        bound=total,
        verifier=verifier,
        reference_solver=reference_solver,
        witness_enumerator=witness_enumerator,
    )


def flatten_np_relation(
    name: str, relation: VerifierProgram, y_bound: PolyBound, z_bound: PolyBound, **hooks
) -> TFNPProblem:
    return build_pair_witness_problem(name, relation, y_bound, z_bound, **hooks)
