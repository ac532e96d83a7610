"""Oblivious compilation of budgeted programs into Boolean circuits.

The whole budget is unrolled; each step multiplexes every instruction's
effect by a one-hot program counter, so the circuit shape depends only on
the program and the input widths, never on input values.  Expensive ALU
units (adders, the divider, multiplier, barrel shifters) are instantiated
once per step and shared across the instructions that need them through
operand buses.  The builder hash-conses gates and folds constants, which
collapses the early constant-state steps substantially.

Size contract, asserted on every compilation: the gate count is at most
G * steps * max(n_regs, 4) * 32 with G = 256.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..props.circuit import BoolCircuit, CircuitBuilder, GateCapExceeded
from .isa import MASK, VerifierProgram, VmError

WORD = 32
SIZE_CONSTANT_G = 256

_CHEAP_BITWISE = {"AND", "OR", "XOR"}
_SHARED_ARITH = {"ADD", "SUB", "MUL", "DIV", "MOD", "SHLR", "SHRR", "EQ", "LT", "LE"}


@dataclass
class _Word:
    bits: list[int]  # 32 wire ids, LSB first


class _W:
    """Word-level gate helpers over a CircuitBuilder."""

    def __init__(self, b: CircuitBuilder):
        self.b = b
        self.F = b.const(False)
        self.T = b.const(True)

    def const_word(self, value: int) -> list[int]:
        return [self.T if (value >> i) & 1 else self.F for i in range(WORD)]

    def bit_to_word(self, w: int) -> list[int]:
        return [w] + [self.F] * (WORD - 1)

    def bnot(self, a: list[int]) -> list[int]:
        return [self.b.not_(x) for x in a]

    def bitwise(self, op: str, a: list[int], c: list[int]) -> list[int]:
        if op == "AND":
            return [self.b.and_(x, y) for x, y in zip(a, c)]
        if op == "OR":
            return [self.b.or_(x, y) for x, y in zip(a, c)]
        return [self.b.xor(x, y) for x, y in zip(a, c)]

    def add(self, a: list[int], c: list[int], carry_in: int | None = None) -> tuple[list[int], int]:
        carry = carry_in if carry_in is not None else self.F
        out = []
        for x, y in zip(a, c):
            s = self.b.xor(self.b.xor(x, y), carry)
            carry = self.b.or_(self.b.and_(x, y), self.b.and_(carry, self.b.xor(x, y)))
            out.append(s)
        return out, carry

    def sub(self, a: list[int], c: list[int]) -> tuple[list[int], int]:
        """a - b; second value is the *no-borrow* flag (1 when a >= b)."""
        bits, carry = self.add(a, self.bnot(c), carry_in=self.T)
        return bits, carry

    def eq(self, a: list[int], c: list[int]) -> int:
        return self.b.and_many([self.b.xnor(x, y) for x, y in zip(a, c)])

    def eq_const(self, a: list[int], value: int) -> int:
        return self.b.and_many(
            [x if (value >> i) & 1 else self.b.not_(x) for i, x in enumerate(a)]
        )

    def is_zero(self, a: list[int]) -> int:
        return self.b.not_(self.b.or_many(a))

    def mux(self, s: int, if1: list[int], if0: list[int]) -> list[int]:
        return [self.b.mux(s, x, y) for x, y in zip(if1, if0)]

    def shift_imm(self, a: list[int], amount: int, left: bool) -> list[int]:
        if left:
            return [self.F] * amount + a[: WORD - amount]
        return a[amount:] + [self.F] * amount

    def barrel(self, a: list[int], amt: list[int], left: bool) -> list[int]:
        out = a
        for stage in range(5):
            shifted = self.shift_imm(out, 1 << stage, left)
            out = self.mux(amt[stage], shifted, out)
        too_big = self.b.or_many(amt[5:])
        return self.mux(too_big, [self.F] * WORD, out)

    def mul(self, a: list[int], c: list[int]) -> list[int]:
        acc = [self.F] * WORD
        for i in range(WORD):
            row = [self.F] * i + [self.b.and_(c[i], a[j]) for j in range(WORD - i)]
            acc, _ = self.add(acc, row)
        return acc

    def divmod(self, a: list[int], c: list[int]) -> tuple[list[int], list[int]]:
        """Restoring division; divisor zero yields quotient 0, remainder 0.

        The working remainder is 33 bits wide: shifting a sub-divisor
        remainder left can exceed 32 bits when the divisor is large.
        """
        ext = c + [self.F]  # divisor zero-extended to 33 bits
        rem = [self.F] * (WORD + 1)
        quo = [self.F] * WORD
        for i in range(WORD - 1, -1, -1):
            rem = [a[i]] + rem[:WORD]
            diff, ge = self.add(rem, self.bnot(ext), carry_in=self.T)
            rem = self.mux(ge, diff, rem)
            quo[i] = ge
        nz = self.b.or_many(c)
        zero = [self.F] * WORD
        return self.mux(nz, quo, zero), self.mux(nz, rem[:WORD], zero)

    def inc_if(self, a: list[int], cond: int) -> list[int]:
        carry = cond
        out = []
        for x in a:
            out.append(self.b.xor(x, carry))
            carry = self.b.and_(x, carry)
        return out


def compile_to_circuit(
    prog: VerifierProgram,
    widths: Sequence[int],
    gate_cap: int = 1 << 20,
    fixed_inputs: dict[int, str] | None = None,
    query_width: int | None = None,
    answer_width: int | None = None,
    output_width: int | None = None,
) -> BoolCircuit:
    """Unroll the program at the given input widths into a circuit.

    Verifier programs (output_width 0) yield a single accept bit; programs
    that EMIT yield their output_width bits.  Inputs listed in
    fixed_inputs are baked in as constants and removed from the circuit's
    input vector.  Oracle programs need declared query/answer widths, and
    must push exactly query_width bits per query; programs with outputs
    must EMIT exactly output_width bits on every halting path.  Transcript
    layout: ORAOUT answer bits immediately follow their ORACLE gate, and
    output buffer gates sit at the very end of the gate list.
    """
    if len(widths) != prog.arity:
        raise VmError(f"expected {prog.arity} widths, got {len(widths)}")
    fixed_inputs = fixed_inputs or {}
    for i, bits in fixed_inputs.items():
        if len(bits) != widths[i]:
            raise VmError(f"fixed input {i} has {len(bits)} bits, width says {widths[i]}")
    if prog.uses_oracle and (query_width is None or answer_width is None):
        raise VmError("oracle program needs query_width and answer_width")

    total_len = sum(widths)
    steps = prog.budget(total_len)
    free_width = sum(w for i, w in enumerate(widths) if i not in fixed_inputs)
    b = CircuitBuilder(free_width, gate_cap=gate_cap)
    w = _W(b)

    # Input bit wires per program input.
    input_bits: list[list[int]] = []
    offset = 0
    for i, width in enumerate(widths):
        if i in fixed_inputs:
            input_bits.append([w.T if ch == "1" else w.F for ch in fixed_inputs[i]])
        else:
            input_bits.append([b.input(offset + j) for j in range(width)])
            offset += width

    instrs = prog.instrs
    P = len(instrs)
    n_regs = prog.n_regs
    out_w = prog.output_width if output_width is None else output_width
    cnt_w = max(1, (out_w + 1).bit_length()) if out_w else 0

    # State.
    pc = [w.T if i == 0 else w.F for i in range(P + 1)]
    acc, rej = w.F, w.F
    regs = [[w.F] * WORD for _ in range(n_regs)]
    out = [w.F] * out_w
    outcnt = [w.F] * cnt_w
    use_oracle = prog.uses_oracle
    qw = query_width or 0
    aw = answer_width or 0
    qbuf = [w.F] * qw
    qcnt = [w.F] * max(1, (qw + 1).bit_length()) if use_oracle else []
    ans = [w.F] * aw
    qflag = w.F

    shared_instrs: dict[str, list[int]] = {}
    for idx, ins in enumerate(instrs):
        op = ins[0]
        if op in ("DIV", "MOD"):
            shared_instrs.setdefault("DIVMOD", []).append(idx)
        elif op in ("EQ", "LT", "LE"):
            shared_instrs.setdefault("CMP", []).append(idx)
        elif op in ("SHLR", "SHRR", "ADD", "SUB", "MUL"):
            shared_instrs.setdefault(op, []).append(idx)
        elif op in ("LOADBIT", "LOADW"):
            shared_instrs.setdefault(f"{op}:{ins[2]}", []).append(idx)
        elif op == "ABIT":
            shared_instrs.setdefault("ABIT", []).append(idx)

    def select_reg_word(pairs: list[tuple[int, int]]) -> list[int]:
        """OR-selection of register words: pairs of (enable wire, reg index)."""
        by_reg: dict[int, list[int]] = {}
        for en, q in pairs:
            by_reg.setdefault(q, []).append(en)
        bits = [w.F] * WORD
        for q, ens in by_reg.items():
            en = b.or_many(ens)
            for j in range(WORD):
                bits[j] = b.or_(bits[j], b.and_(en, regs[q][j]))
        return bits

    for _step in range(steps):
        halted = b.or_(acc, rej)
        active = b.not_(halted)
        ex = [b.and_(pc[i], active) for i in range(P)]
        ex_end = b.and_(pc[P], active)

        # shared unit outputs for this step
        unit_out: dict[str, tuple[list[int], ...]] = {}
        for key, members in shared_instrs.items():
            if key.startswith("LOADBIT:") or key.startswith("LOADW:"):
                src = int(key.split(":")[1])
                bus = select_reg_word([(ex[i], instrs[i][3]) for i in members])
                bits = input_bits[src]
                width = len(bits)
                dec = [w.eq_const(bus, j) for j in range(width)]
                if key.startswith("LOADBIT:"):
                    val = b.or_many([b.and_(dec[j], bits[j]) for j in range(width)])
                    unit_out[key] = (w.bit_to_word(val),)
                else:
                    word = []
                    for t in range(WORD):
                        word.append(
                            b.or_many(
                                [
                                    b.and_(dec[j], bits[j + t])
                                    for j in range(width)
                                    if j + t < width
                                ]
                            )
                        )
                    unit_out[key] = (word,)
                continue
            if key == "ABIT":
                bus = select_reg_word([(ex[i], instrs[i][2]) for i in members])
                dec = [w.eq_const(bus, j) for j in range(aw)]
                val = b.or_many([b.and_(dec[j], ans[j]) for j in range(aw)])
                unit_out[key] = (w.bit_to_word(val),)
                continue
            a_bus = select_reg_word([(ex[i], instrs[i][2]) for i in members])
            b_bus = select_reg_word([(ex[i], instrs[i][3]) for i in members])
            if key == "DIVMOD":
                unit_out[key] = w.divmod(a_bus, b_bus)
            elif key == "CMP":
                diff_eq = w.eq(a_bus, b_bus)
                _, ge = w.sub(a_bus, b_bus)
                lt = b.not_(ge)
                le = b.or_(lt, diff_eq)
                unit_out[key] = (
                    w.bit_to_word(diff_eq),
                    w.bit_to_word(lt),
                    w.bit_to_word(le),
                )
            elif key == "ADD":
                unit_out[key] = (w.add(a_bus, b_bus)[0],)
            elif key == "SUB":
                unit_out[key] = (w.sub(a_bus, b_bus)[0],)
            elif key == "MUL":
                unit_out[key] = (w.mul(a_bus, b_bus),)
            elif key == "SHLR":
                unit_out[key] = (w.barrel(a_bus, b_bus, left=True),)
            elif key == "SHRR":
                unit_out[key] = (w.barrel(a_bus, b_bus, left=False),)

        # per-instruction results
        writes: dict[int, list[tuple[int, list[int]]]] = {}

        def write(idx: int, rd: int, word: list[int]):
            writes.setdefault(rd, []).append((ex[idx], word))

        zero_tests: dict[int, int] = {}

        def is_zero_reg(q: int) -> int:
            if q not in zero_tests:
                zero_tests[q] = w.is_zero(regs[q])
            return zero_tests[q]

        pc_contrib: list[list[int]] = [[] for _ in range(P + 1)]
        acc_terms: list[int] = []
        rej_terms: list[int] = [ex_end]
        pc_contrib[P].append(ex_end)
        emit_terms: list[tuple[int, int]] = []  # (exec wire, bit wire)
        qpush_terms: list[tuple[int, int]] = []
        query_terms: list[int] = []

        for idx, ins in enumerate(instrs):
            op = ins[0]
            nxt = idx + 1
            if op in _CHEAP_BITWISE:
                write(idx, ins[1], w.bitwise(op, regs[ins[2]], regs[ins[3]]))
            elif op == "NOT":
                write(idx, ins[1], w.bnot(regs[ins[2]]))
            elif op == "MOV":
                write(idx, ins[1], list(regs[ins[2]]))
            elif op == "CONST":
                write(idx, ins[1], w.const_word(ins[2]))
            elif op == "SHL":
                write(idx, ins[1], w.shift_imm(regs[ins[2]], ins[3], left=True))
            elif op == "SHR":
                write(idx, ins[1], w.shift_imm(regs[ins[2]], ins[3], left=False))
            elif op in ("ADD", "SUB", "MUL"):
                write(idx, ins[1], unit_out[op][0])
            elif op == "DIV":
                write(idx, ins[1], unit_out["DIVMOD"][0])
            elif op == "MOD":
                write(idx, ins[1], unit_out["DIVMOD"][1])
            elif op == "SHLR":
                write(idx, ins[1], unit_out["SHLR"][0])
            elif op == "SHRR":
                write(idx, ins[1], unit_out["SHRR"][0])
            elif op == "EQ":
                write(idx, ins[1], unit_out["CMP"][0])
            elif op == "LT":
                write(idx, ins[1], unit_out["CMP"][1])
            elif op == "LE":
                write(idx, ins[1], unit_out["CMP"][2])
            elif op == "LOADLEN":
                write(idx, ins[1], w.const_word(widths[ins[2]]))
            elif op in ("LOADBIT", "LOADW"):
                write(idx, ins[1], unit_out[f"{op}:{ins[2]}"][0])
            elif op == "ALEN":
                length = w.mux(qflag, w.const_word(aw), w.const_word(0))
                write(idx, ins[1], length)
            elif op == "ABIT":
                write(idx, ins[1], unit_out["ABIT"][0])
            elif op == "JMP":
                pc_contrib[ins[1]].append(ex[idx])
                continue
            elif op == "JZ":
                z = is_zero_reg(ins[1])
                pc_contrib[ins[2]].append(b.and_(ex[idx], z))
                pc_contrib[nxt].append(b.and_(ex[idx], b.not_(z)))
                continue
            elif op == "JNZ":
                z = is_zero_reg(ins[1])
                pc_contrib[nxt].append(b.and_(ex[idx], z))
                pc_contrib[ins[2]].append(b.and_(ex[idx], b.not_(z)))
                continue
            elif op == "ACCEPT":
                acc_terms.append(ex[idx])
                pc_contrib[idx].append(ex[idx])
                continue
            elif op == "REJECT":
                rej_terms.append(ex[idx])
                pc_contrib[idx].append(ex[idx])
                continue
            elif op == "EMIT":
                emit_terms.append((ex[idx], regs[ins[1]][0]))
            elif op == "QPUSH":
                qpush_terms.append((ex[idx], regs[ins[1]][0]))
            elif op == "QUERY":
                query_terms.append(ex[idx])
            pc_contrib[nxt].append(ex[idx])

        # register writeback
        new_regs = []
        for q in range(n_regs):
            if q not in writes:
                new_regs.append(regs[q])
                continue
            wq = b.or_many([en for en, _ in writes[q]])
            bits = []
            for j in range(WORD):
                val = b.or_many([b.and_(en, word[j]) for en, word in writes[q]])
                bits.append(b.or_(val, b.and_(b.not_(wq), regs[q][j])))
            new_regs.append(bits)

        # outputs
        if out_w:
            e = b.or_many([t for t, _ in emit_terms])
            bit = b.or_many([b.and_(t, x) for t, x in emit_terms])
            new_out = []
            for j in range(out_w):
                hit = b.and_(e, w_eq_cnt(w, outcnt, j))
                new_out.append(b.or_(out[j], b.and_(hit, bit)))
            out = new_out
            outcnt = w.inc_if(outcnt, e)

        # oracle interaction
        if use_oracle:
            pe = b.or_many([t for t, _ in qpush_terms])
            pbit = b.or_many([b.and_(t, x) for t, x in qpush_terms])
            qe = b.or_many(query_terms)
            pushed = []
            for j in range(qw):
                hit = b.and_(pe, w_eq_cnt(w, qcnt, j))
                pushed.append(b.or_(qbuf[j], b.and_(hit, pbit)))
            answers = b.oracle(qe, pushed, aw) if query_terms else None
            if answers is not None:
                ans = w.mux(qe, answers, ans) if aw else ans
                qflag = b.or_(qflag, qe)
                qbuf = [b.and_(x, b.not_(qe)) for x in pushed]
                qcnt = [b.and_(x, b.not_(qe)) for x in w.inc_if(qcnt, pe)]
            else:
                qbuf = pushed
                qcnt = w.inc_if(qcnt, pe)

        # program counter and halt flags
        new_pc = []
        for j in range(P + 1):
            stay = b.and_(pc[j], halted)
            new_pc.append(b.or_(stay, b.or_many(pc_contrib[j])))
        pc = new_pc
        acc = b.or_(acc, b.or_many(acc_terms))
        rej = b.or_(rej, b.or_many(rej_terms))
        regs = new_regs

    if out_w:
        outputs = [b.buf(x) for x in out]
    else:
        outputs = [b.buf(acc)]
    circuit = b.finish(outputs)
    bound = SIZE_CONSTANT_G * max(1, steps) * max(n_regs, 4) * WORD
    if len(circuit.gates) > bound:
        raise VmError(
            f"compiled size {len(circuit.gates)} exceeds documented bound {bound}"
        )
    return circuit


def w_eq_cnt(w: _W, cnt: list[int], j: int) -> int:
    return w.b.and_many(
        [x if (j >> i) & 1 else w.b.not_(x) for i, x in enumerate(cnt)]
    )
