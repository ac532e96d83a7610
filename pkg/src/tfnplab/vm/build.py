"""Program construction: register allocation, labels, and the inliner that
splices one program into another with its inputs remapped to views.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .isa import MASK, PolyBound, VerifierProgram, VmError


class Label:
    __slots__ = ("index",)

    def __init__(self):
        self.index: int | None = None


class ProgramBuilder:
    def __init__(self, name: str, arity: int):
        self.name = name
        self.arity = arity
        self.instrs: list[list] = []
        self._next_reg = 0
        self._const_regs: dict[int, int] = {}
        self._fixups: list[tuple[int, int, Label]] = []
        self.output_width = 0

    def reg(self) -> int:
        r = self._next_reg
        self._next_reg += 1
        return r

    def regs(self, count: int) -> list[int]:
        base = self._next_reg
        self._next_reg += count
        return list(range(base, base + count))

    def emit(self, op: str, *operands) -> None:
        self.instrs.append([op, *operands])

    def label(self) -> Label:
        return Label()

    def mark(self, lab: Label) -> None:
        if lab.index is not None:
            raise VmError("label marked twice")
        lab.index = len(self.instrs)

    def _jump(self, op: str, *pre, target: Label):
        self.instrs.append([op, *pre, -1])
        self._fixups.append((len(self.instrs) - 1, len(self.instrs[-1]) - 1, target))

    def jmp(self, target: Label):
        self._jump("JMP", target=target)

    def jz(self, rs: int, target: Label):
        self._jump("JZ", rs, target=target)

    def jnz(self, rs: int, target: Label):
        self._jump("JNZ", rs, target=target)

    def const_reg(self, value: int) -> int:
        """Register holding a constant; the load lands in a preamble emitted
        by finish(), so it is initialized on every control path."""
        value &= MASK
        if value not in self._const_regs:
            self._const_regs[value] = self.reg()
        return self._const_regs[value]

    def mux_word(self, rd: int, sel01: int, if1: int, if0: int, scratch: int):
        """rd := if1 when sel01=1, else if0 (sel01 must hold 0 or 1)."""
        self.emit("SUB", scratch, self.const_reg(0), sel01)  # 0 or all-ones
        self.emit("AND", rd, if1, scratch)
        self.emit("NOT", scratch, scratch)
        self.emit("AND", scratch, if0, scratch)
        self.emit("OR", rd, rd, scratch)

    def finish(
        self,
        n_regs: int | None = None,
        budget: PolyBound = PolyBound(1, 1, 64),
        output_width: int = 0,
    ) -> VerifierProgram:
        preamble = [
            ["CONST", r, v] for v, r in sorted(self._const_regs.items(), key=lambda kv: kv[1])
        ]
        shift = len(preamble)
        for at, slot, lab in self._fixups:
            if lab.index is None:
                raise VmError("jump to unmarked label")
            self.instrs[at][slot] = lab.index + shift
        regs = n_regs if n_regs is not None else max(1, self._next_reg)
        return VerifierProgram(
            name=self.name,
            arity=self.arity,
            n_regs=regs,
            budget=budget,
            instrs=tuple(tuple(i) for i in preamble + self.instrs),
            output_width=output_width,
        )


class InputView:
    """How an inlined callee sees one of its inputs."""

    def emit_len(self, b: ProgramBuilder, rd: int) -> None:
        raise NotImplementedError

    def emit_bit(self, b: ProgramBuilder, rd: int, pos: int) -> None:
        raise NotImplementedError

    def emit_word(self, b: ProgramBuilder, rd: int, pos: int) -> None:
        raise NotImplementedError


@dataclass
class DirectView(InputView):
    """Callee input is exactly the caller's input `index`."""

    index: int

    def emit_len(self, b, rd):
        b.emit("LOADLEN", rd, self.index)

    def emit_bit(self, b, rd, pos):
        b.emit("LOADBIT", rd, self.index, pos)

    def emit_word(self, b, rd, pos):
        b.emit("LOADW", rd, self.index, pos)


@dataclass
class WindowView(InputView):
    """Callee input is the window [off, off+length) of caller input `index`.

    off_reg and len_reg are caller registers holding the window; they must
    stay valid across the inlined call.  Needs three scratch registers.
    """

    index: int
    off_reg: int
    len_reg: int
    scratch: tuple[int, int, int]

    def emit_len(self, b, rd):
        b.emit("MOV", rd, self.len_reg)

    def emit_bit(self, b, rd, pos):
        t0, t1, _ = self.scratch
        b.emit("ADD", t0, pos, self.off_reg)
        b.emit("LOADBIT", rd, self.index, t0)
        b.emit("LT", t1, pos, self.len_reg)
        b.emit("AND", rd, rd, t1)

    def emit_word(self, b, rd, pos):
        t0, t1, t2 = self.scratch
        b.emit("ADD", t0, pos, self.off_reg)
        b.emit("LOADW", rd, self.index, t0)
        # mask to the min(32, len - pos) valid bits; none when pos >= len
        b.emit("SUB", t0, self.len_reg, pos)          # w (wraps when pos > len)
        b.emit("LT", t1, t0, b.const_reg(32))         # w < 32 ?
        b.emit("SUB", t2, b.const_reg(32), t0)        # 32 - w
        b.emit("SHRR", t2, b.const_reg(MASK), t2)     # low-w mask (w < 32 case)
        b.mux_word(t2, t1, t2, b.const_reg(MASK), t0)
        b.emit("AND", rd, rd, t2)
        b.emit("LT", t1, pos, self.len_reg)           # pos in range at all?
        b.emit("SUB", t1, b.const_reg(0), t1)
        b.emit("AND", rd, rd, t1)


def emit_decode_window(
    b: ProgramBuilder,
    inp: int,
    pos: int,
    len_reg: int,
    out_off: int,
    out_len: int,
    bit: int,
    t: int,
    malformed: Label,
) -> None:
    """Parse one unary-length-prefixed part of input `inp` starting at
    register `pos`; leaves the part's window in (out_off, out_len) and
    advances pos past it.  Jumps to `malformed` on any shape violation."""
    head, delim = b.label(), b.label()
    b.emit("CONST", out_len, 0)
    b.mark(head)
    b.emit("LT", t, pos, len_reg)
    b.jz(t, malformed)
    b.emit("LOADBIT", bit, inp, pos)
    b.jz(bit, delim)
    b.emit("ADD", out_len, out_len, b.const_reg(1))
    b.emit("ADD", pos, pos, b.const_reg(1))
    b.jmp(head)
    b.mark(delim)
    b.emit("ADD", pos, pos, b.const_reg(1))
    b.emit("MOV", out_off, pos)
    b.emit("ADD", pos, pos, out_len)
    b.emit("LE", t, pos, len_reg)
    b.jz(t, malformed)


def inline_program(
    b: ProgramBuilder,
    callee: VerifierProgram,
    views: Sequence[InputView],
    result_reg: int,
    allow_emit: bool = False,
    allow_oracle: bool = False,
) -> None:
    """Splice callee into the builder; afterwards result_reg holds 1/0 for
    the callee's accept/reject verdict and control continues in sequence.

    Register indices of the callee are shifted into a fresh block.  EMIT
    and oracle instructions pass through only when explicitly allowed.
    """
    if len(views) != callee.arity:
        raise VmError(f"callee expects {callee.arity} views, got {len(views)}")
    base = b.regs(callee.n_regs)[0]
    done = b.label()
    labels = [b.label() for _ in range(len(callee.instrs) + 1)]

    def r(reg: int) -> int:
        return base + reg

    # callees may rely on the all-zero initial register state, and the
    # inline site may sit inside a loop, so clear the block every entry
    for reg in range(callee.n_regs):
        b.emit("CONST", r(reg), 0)

    for idx, ins in enumerate(callee.instrs):
        b.mark(labels[idx])
        op = ins[0]
        if op in ("ADD", "SUB", "MUL", "DIV", "MOD", "AND", "OR", "XOR",
                  "SHLR", "SHRR", "EQ", "LT", "LE"):
            b.emit(op, r(ins[1]), r(ins[2]), r(ins[3]))
        elif op in ("MOV", "NOT"):
            b.emit(op, r(ins[1]), r(ins[2]))
        elif op in ("SHL", "SHR"):
            b.emit(op, r(ins[1]), r(ins[2]), ins[3])
        elif op == "CONST":
            b.emit(op, r(ins[1]), ins[2])
        elif op == "LOADLEN":
            views[ins[2]].emit_len(b, r(ins[1]))
        elif op == "LOADBIT":
            views[ins[2]].emit_bit(b, r(ins[1]), r(ins[3]))
        elif op == "LOADW":
            views[ins[2]].emit_word(b, r(ins[1]), r(ins[3]))
        elif op == "JMP":
            b.jmp(labels[ins[1]])
        elif op == "JZ":
            b.jz(r(ins[1]), labels[ins[2]])
        elif op == "JNZ":
            b.jnz(r(ins[1]), labels[ins[2]])
        elif op == "ACCEPT":
            b.emit("CONST", result_reg, 1)
            b.jmp(done)
        elif op == "REJECT":
            b.emit("CONST", result_reg, 0)
            b.jmp(done)
        elif op == "EMIT":
            if not allow_emit:
                raise VmError("inlined callee EMITs but emits are not allowed here")
            b.emit(op, r(ins[1]))
        elif op in ("QPUSH", "QUERY", "ALEN", "ABIT"):
            if not allow_oracle:
                raise VmError("inlined callee uses an oracle where none is allowed")
            b.emit(op, *[r(x) for x in ins[1:]])
        else:  # pragma: no cover
            raise VmError(f"cannot inline op {op}")
    # falling off the callee's end rejects
    b.mark(labels[len(callee.instrs)])
    b.emit("CONST", result_reg, 0)
    b.mark(done)
