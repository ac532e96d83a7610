"""The completion construction: wrapping a search problem P into P' whose
instances are (x, oracle circuit C) and whose witnesses are full
transcripts of C on x, with every enabled oracle query/answer pair
checked against P's verifier.  Malformed instances accept every witness,
which keeps P' total by construction.

A Turing reduction then becomes many-one: map x to (x, compiled circuit
of the oracle program) and read the output off the accepted transcript.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from ..props.circuit import BoolCircuit, OracleRecord, Transcript, circuit_from_bits, circuit_to_bits
from ..vm.build import (
    DirectView,
    InputView,
    ProgramBuilder,
    WindowView,
    emit_decode_window,
    inline_program,
)
from ..vm.compile import compile_to_circuit
from ..vm.isa import MASK, PolyBound, VerifierProgram, run
from ..vm.pack import decode_tuple, encode_tuple
from .problem import TFNPProblem, solve
from .reductions import (
    HostTransformer,
    ManyOneReduction,
    TuringReduction,
    _emit_poly,
    normalize_padding,
    pad_witness,
)

U16 = 0xFFFF


@dataclass
class _ScatterQueryView(InputView):
    """Query bits of an oracle gate: bit j lives at transcript position
    qid_j, where qid_j is the u16 table entry j of the gate's record
    inside the circuit window of the instance."""

    qtab_abs: int  # register: absolute bit offset of the qid table in input 0
    qw_reg: int  # register: declared query width
    scratch: tuple[int, int, int, int]

    def emit_len(self, b, rd):
        b.emit("MOV", rd, self.qw_reg)

    def emit_bit(self, b, rd, pos):
        t0, t1, _, _ = self.scratch
        b.emit("MUL", t0, pos, b.const_reg(16))
        b.emit("ADD", t0, t0, self.qtab_abs)
        b.emit("LOADW", t1, 0, t0)
        b.emit("AND", t1, t1, b.const_reg(U16))
        b.emit("LOADBIT", rd, 1, t1)
        b.emit("LT", t0, pos, self.qw_reg)
        b.emit("AND", rd, rd, t0)

    def emit_word(self, b, rd, pos):
        t0, t1, jj, pp = self.scratch
        loop, done = b.label(), b.label()
        b.emit("CONST", rd, 0)
        b.emit("CONST", jj, 0)
        b.mark(loop)
        b.emit("EQ", t0, jj, b.const_reg(32))
        b.jnz(t0, done)
        b.emit("ADD", pp, pos, jj)
        b.emit("MUL", t0, pp, b.const_reg(16))
        b.emit("ADD", t0, t0, self.qtab_abs)
        b.emit("LOADW", t1, 0, t0)
        b.emit("AND", t1, t1, b.const_reg(U16))
        b.emit("LOADBIT", t1, 1, t1)
        b.emit("LT", t0, pp, self.qw_reg)
        b.emit("AND", t1, t1, t0)
        b.emit("SHLR", t1, t1, jj)
        b.emit("OR", rd, rd, t1)
        b.emit("ADD", jj, jj, b.const_reg(1))
        b.jmp(loop)
        b.mark(done)


def _completion_verifier(padded_verifier: VerifierProgram, witness_poly: PolyBound) -> VerifierProgram:
    """R'((x, C), v): v is a bit-per-gate transcript of C on x whose
    enabled oracle calls all carry witnesses accepted by the padded target
    verifier; any instance that fails to parse accepts every v."""
    b = ProgramBuilder(f"completion-{padded_verifier.name}", 2)
    lenu, pos, bit, t, t2 = (b.reg() for _ in range(5))
    off_x, n_x, off_c, n_c = (b.reg() for _ in range(4))
    ninp, ngates, nout, lenv = (b.reg() for _ in range(4))
    cur, gid, opc, fa, fb, va, vb, got = (b.reg() for _ in range(8))
    qw_r, aw_r, qtab, ans_off, pend, last_og, res, j = (b.reg() for _ in range(8))
    sc = tuple(b.reg() for _ in range(4))
    wsc = (b.reg(), b.reg(), b.reg())
    acc, rej = b.label(), b.label()

    def ru(width: int, dest: int):
        """dest := width-bit field of the circuit window at cur; advances cur."""
        b.emit("ADD", t, cur, b.const_reg(width))
        b.emit("LE", t, t, n_c)
        b.jz(t, acc)  # truncated record: malformed
        b.emit("ADD", t2, off_c, cur)
        b.emit("LOADW", dest, 0, t2)
        b.emit("AND", dest, dest, b.const_reg((1 << width) - 1))
        b.emit("ADD", cur, cur, b.const_reg(width))

    b.emit("LOADLEN", lenu, 0)
    b.emit("CONST", pos, 0)
    emit_decode_window(b, 0, pos, lenu, off_x, n_x, bit, t, acc)
    emit_decode_window(b, 0, pos, lenu, off_c, n_c, bit, t, acc)
    b.emit("EQ", t, pos, lenu)
    b.jz(t, acc)
    b.emit("CONST", cur, 0)
    ru(16, ninp)
    ru(16, ngates)
    ru(16, nout)
    b.emit("EQ", t, ninp, n_x)
    b.jz(t, acc)  # the circuit must read exactly x
    b.emit("LOADLEN", lenv, 1)
    b.emit("EQ", t, lenv, ngates)
    b.jz(t, rej)  # one transcript bit per gate
    b.emit("CONST", gid, 0)
    b.emit("CONST", pend, 0)
    b.emit("CONST", last_og, MASK)

    gloop, gdone, dispatch_end = b.label(), b.label(), b.label()
    b.mark(gloop)
    b.emit("EQ", t, gid, ngates)
    b.jnz(t, gdone)
    ru(4, opc)
    b.emit("LOADBIT", got, 1, gid)

    is_oraout = b.label()
    b.emit("EQ", t, opc, b.const_reg(7))
    b.jnz(t, is_oraout)
    b.jz(pend, dispatch := b.label())
    b.jmp(acc)  # a pending answer slot holds a non-ORAOUT gate: malformed
    b.mark(dispatch)

    br_in, br_const, br_not, br_and, br_or, br_buf, br_oracle = (
        b.label() for _ in range(7)
    )
    for code, lab in ((0, br_in), (1, br_const), (2, br_not), (3, br_and),
                      (4, br_or), (5, br_buf), (6, br_oracle)):
        b.emit("EQ", t, opc, b.const_reg(code))
        b.jnz(t, lab)
    b.jmp(acc)  # unknown opcode: malformed

    b.mark(br_in)
    ru(16, fa)
    b.emit("LT", t, fa, ninp)
    b.jz(t, acc)
    b.emit("ADD", t2, off_x, fa)
    b.emit("LOADBIT", va, 0, t2)
    b.emit("EQ", t, got, va)
    b.jz(t, rej)
    b.jmp(dispatch_end)

    b.mark(br_const)
    ru(16, fa)
    b.emit("AND", fa, fa, b.const_reg(1))
    b.emit("EQ", t, got, fa)
    b.jz(t, rej)
    b.jmp(dispatch_end)

    def _load_ref(dest_val: int, field_reg: int):
        b.emit("LT", t, field_reg, gid)
        b.jz(t, acc)  # forward reference: malformed
        b.emit("LOADBIT", dest_val, 1, field_reg)

    b.mark(br_not)
    ru(16, fa)
    _load_ref(va, fa)
    b.emit("XOR", va, va, b.const_reg(1))
    b.emit("EQ", t, got, va)
    b.jz(t, rej)
    b.jmp(dispatch_end)

    b.mark(br_and)
    ru(16, fa)
    ru(16, fb)
    _load_ref(va, fa)
    _load_ref(vb, fb)
    b.emit("AND", va, va, vb)
    b.emit("EQ", t, got, va)
    b.jz(t, rej)
    b.jmp(dispatch_end)

    b.mark(br_or)
    ru(16, fa)
    ru(16, fb)
    _load_ref(va, fa)
    _load_ref(vb, fb)
    b.emit("OR", va, va, vb)
    b.emit("EQ", t, got, va)
    b.jz(t, rej)
    b.jmp(dispatch_end)

    b.mark(br_buf)
    ru(16, fa)
    _load_ref(va, fa)
    b.emit("EQ", t, got, va)
    b.jz(t, rej)
    b.jmp(dispatch_end)

    b.mark(br_oracle)
    b.jnz(got, rej)  # the oracle marker gate always carries 0
    ru(16, fa)  # enable gate id
    _load_ref(va, fa)
    ru(16, qw_r)
    ru(16, aw_r)
    b.jz(aw_r, acc)
    # answers must fit before the end of the gate list
    b.emit("ADD", t, gid, aw_r)
    b.emit("LT", t, t, ngates)
    b.jz(t, acc)
    # the declared answer width is the padded witness length of the query
    b.emit("LT", t, b.const_reg(1 << 12), qw_r)
    b.jnz(t, acc)
    _emit_poly(b, witness_poly, qw_r, t2, t)
    b.emit("EQ", t, aw_r, t2)
    b.jz(t, acc)
    # query id table: remember its position, bounds- and reference-check it
    b.emit("MOV", qtab, cur)
    b.emit("ADD", qtab, qtab, off_c)
    b.emit("CONST", j, 0)
    qchk, qchk_done = b.label(), b.label()
    b.mark(qchk)
    b.emit("EQ", t, j, qw_r)
    b.jnz(t, qchk_done)
    ru(16, fb)
    b.emit("LT", t, fb, gid)
    b.jz(t, acc)  # query wire must reference an earlier gate
    b.emit("ADD", j, j, b.const_reg(1))
    b.jmp(qchk)
    b.mark(qchk_done)
    enabled, oracle_done = b.label(), b.label()
    b.jnz(va, enabled)
    # disabled: the aw answer bits must all be zero
    b.emit("CONST", j, 0)
    zl, zdone = b.label(), b.label()
    b.mark(zl)
    b.emit("EQ", t, j, aw_r)
    b.jnz(t, zdone)
    b.emit("ADD", t2, gid, b.const_reg(1))
    b.emit("ADD", t2, t2, j)
    b.emit("LOADBIT", t, 1, t2)
    b.jnz(t, rej)
    b.emit("ADD", j, j, b.const_reg(1))
    b.jmp(zl)
    b.mark(zdone)
    b.jmp(oracle_done)
    b.mark(enabled)
    b.emit("ADD", ans_off, gid, b.const_reg(1))
    inline_program(
        b,
        padded_verifier,
        [
            _ScatterQueryView(qtab, qw_r, sc),
            WindowView(1, ans_off, aw_r, wsc),
        ],
        res,
    )
    b.jz(res, rej)  # forged oracle answer: not a valid padded witness
    b.mark(oracle_done)
    b.emit("MOV", last_og, gid)
    b.emit("MOV", pend, aw_r)
    b.jmp(dispatch_end)

    b.mark(is_oraout)
    b.jz(pend, acc)  # stray ORAOUT: not the canonical layout
    ru(16, fa)
    ru(16, fb)
    b.emit("EQ", t, fa, last_og)
    b.jz(t, acc)
    b.emit("SUB", t2, gid, last_og)
    b.emit("SUB", t2, t2, b.const_reg(1))
    b.emit("EQ", t, fb, t2)
    b.jz(t, acc)
    b.emit("SUB", pend, pend, b.const_reg(1))

    b.mark(dispatch_end)
    b.emit("ADD", gid, gid, b.const_reg(1))
    b.jmp(gloop)

    b.mark(gdone)
    b.jnz(pend, acc)  # gate list ended inside an answer block: malformed
    # output id table closes the window exactly
    b.emit("MUL", t, nout, b.const_reg(16))
    b.emit("ADD", t, t, cur)
    b.emit("EQ", t, t, n_c)
    b.jz(t, acc)
    b.emit("CONST", j, 0)
    ochk, odone = b.label(), b.label()
    b.mark(ochk)
    b.emit("EQ", t, j, nout)
    b.jnz(t, odone)
    ru(16, fa)
    b.emit("LT", t, fa, ngates)
    b.jz(t, acc)
    b.emit("ADD", j, j, b.const_reg(1))
    b.jmp(ochk)
    b.mark(odone)
    b.jmp(acc)

    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")

    inner = padded_verifier.budget
    budget = PolyBound(16 * (inner.c + inner.d) + 96, inner.k + 1, inner.d + 600)
    return b.finish(budget=budget)


def wrap_completion(problem: TFNPProblem, gate_cap: int = 1 << 22) -> TFNPProblem:
    """The many-one-complete wrapper P' of P (instances (x, C), witnesses
    = oracle transcripts); oracle answers are padded witnesses of P."""
    padded = normalize_padding(problem)

    def oracle(q: str) -> str:
        return pad_witness(solve(problem, q), padded.bound(len(q)))

    def split(x: str) -> tuple[str, BoolCircuit] | None:
        parts = decode_tuple(x, 2)
        if isinstance(parts, str):
            return None
        xs, cbits = parts
        try:
            circuit = circuit_from_bits(cbits)
        except Exception:
            return None
        if circuit.n_inputs != len(xs):
            return None
        return xs, circuit

    def reference(u: str) -> str:
        got = split(u)
        if got is None:
            return ""
        xs, circuit = got
        from ..props.circuit import eval_oracle_circuit

        _, transcript = eval_oracle_circuit(circuit, xs, oracle)
        return transcript.bits()

    def enumerator(u: str) -> Iterator[str]:
        got = split(u)
        if got is None:
            raise ValueError("cannot enumerate witnesses of a malformed instance")
        xs, circuit = got
        yield from _enumerate_transcripts(circuit, xs, problem, padded)

    return TFNPProblem(
        name=f"{problem.name}-completed",
        bound=PolyBound(1, 1, 0),
        verifier=_completion_verifier(padded.verifier, padded.bound),
        reference_solver=reference,
        witness_enumerator=enumerator,
    )


def _enumerate_transcripts(
    circuit: BoolCircuit, xs: str, problem: TFNPProblem, padded: TFNPProblem
) -> Iterator[str]:
    """All valid transcripts: branch over every padded witness at each
    enabled oracle gate (answers feed later gates, so this is a DFS)."""
    from .problem import enumerate_witnesses

    gates = circuit.gates

    def rec(idx: int, vals: list[bool], answers: dict[int, str]) -> Iterator[str]:
        if idx == len(gates):
            yield "".join("1" if v else "0" for v in vals)
            return
        g = gates[idx]
        op = g[0]
        if op == "IN":
            vals.append(xs[g[1]] == "1")
        elif op == "CONST":
            vals.append(bool(g[1]))
        elif op == "NOT":
            vals.append(not vals[g[1]])
        elif op == "BUF":
            vals.append(vals[g[1]])
        elif op == "AND":
            vals.append(vals[g[1]] and vals[g[2]])
        elif op == "OR":
            vals.append(vals[g[1]] or vals[g[2]])
        elif op == "ORACLE":
            enable, queries, aw = g[1], g[2], g[3]
            if vals[enable]:
                q = "".join("1" if vals[i] else "0" for i in queries)
                vals.append(False)
                for y in enumerate_witnesses(problem, q):
                    answers[idx] = pad_witness(y, padded.bound(len(q)))
                    yield from rec(idx + 1, list(vals), dict(answers))
                return
            answers[idx] = "0" * aw
            vals.append(False)
        else:  # ORAOUT
            vals.append(answers[g[1]][g[2]] == "1")
        yield from rec(idx + 1, vals, answers)

    yield from rec(0, [], {})


def turing_to_many_one(
    T: TuringReduction, target: TFNPProblem, gate_cap: int = 1 << 22
) -> tuple[ManyOneReduction, TFNPProblem]:
    """Compile the oracle program into a circuit per instance length and
    return the induced many-one reduction into wrap_completion(target)."""
    completed = wrap_completion(target, gate_cap)
    padded_bound = PolyBound(target.bound.c, target.bound.k, target.bound.d + 1)

    def build_instance(x: str) -> str:
        qw = T.query_bound(len(x))
        aw = padded_bound(qw)
        circuit = compile_to_circuit(
            T.program,
            [len(x)],
            gate_cap=gate_cap,
            query_width=qw,
            answer_width=aw,
            output_width=T.output_bound(len(x)),
        )
        return encode_tuple((x, circuit_to_bits(circuit)))

    f = HostTransformer(
        name=f"{T.name}-to-instance",
        arity=1,
        fn=build_instance,
        note=(
            "emits (x, compiled oracle circuit); the circuit depends only on "
            "|x| and has polynomial size, but embedding it in bytecode would "
            "need one instruction per output bit"
        ),
    )

    bg = ProgramBuilder(f"{T.name}-extract", 2)
    lenv, w_out, start, i, bit, t, lenx = (bg.reg() for _ in range(7))
    loop, done = bg.label(), bg.label()
    bg.emit("LOADLEN", lenx, 0)
    _emit_poly(bg, T.output_bound, lenx, w_out, t)
    bg.emit("LOADLEN", lenv, 1)
    bg.emit("SUB", start, lenv, w_out)
    bg.emit("LE", t, w_out, lenv)
    bg.jz(t, done)  # transcript shorter than the output region: emit nothing
    bg.emit("CONST", i, 0)
    bg.mark(loop)
    bg.emit("EQ", t, i, w_out)
    bg.jnz(t, done)
    bg.emit("ADD", t, start, i)
    bg.emit("LOADBIT", bit, 1, t)
    bg.emit("EMIT", bit)
    bg.emit("ADD", i, i, bg.const_reg(1))
    bg.jmp(loop)
    bg.mark(done)
    bg.emit("ACCEPT")
    g = bg.finish(
        budget=PolyBound(8 + 4 * T.output_bound.c, max(1, T.output_bound.k), 64 + 4 * T.output_bound.d)
    )

    red = ManyOneReduction(f"{T.name}-many-one", f, g)
    return red, completed
