"""Budgeted register bytecode: the executable meaning of "decidable in
polynomial time".

Programs run over 32-bit unsigned words, read bit-string inputs through
explicit load instructions, and must halt within c*n^k + d steps of the
total input length n, or the run fails loudly with BudgetExceeded.
Determinism: a run is a pure function of (program, inputs, oracle).

Instruction set (rd/rs/rt registers, i input index, imm immediate):

    CONST rd imm        MOV rd rs
    ADD/SUB/MUL rd rs rt         wrapping; DIV/MOD rd rs rt (by zero -> 0)
    AND/OR/XOR rd rs rt          NOT rd rs
    SHL/SHR rd rs imm            SHLR/SHRR rd rs rt (amount >= 32 -> 0)
    EQ/LT/LE rd rs rt            unsigned, result 0/1
    LOADLEN rd i                 LOADBIT rd i rs     LOADW rd i rs
    JMP l      JZ rs l    JNZ rs l
    ACCEPT     REJECT     EMIT rs
    QPUSH rs   QUERY      ALEN rd    ABIT rd rs      (oracle programs only)

Out-of-range input bits read as 0.  Falling off the end of the program
rejects.  Values are bit strings, least significant bit first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

MASK = 0xFFFFFFFF

ACCEPT = "ACCEPT"
REJECT = "REJECT"

_THREE_REG = {"ADD", "SUB", "MUL", "DIV", "MOD", "AND", "OR", "XOR",
              "SHLR", "SHRR", "EQ", "LT", "LE"}
_ORACLE_OPS = {"QPUSH", "QUERY", "ALEN", "ABIT"}


class VmError(ValueError):
    pass


class BudgetExceeded(VmError):
    """The program overran its declared polynomial budget: a contract
    violation to surface, never a silent reject."""

    def __init__(self, name: str, budget: int):
        super().__init__(f"program {name!r} exceeded its budget of {budget} steps")
        self.budget = budget


@dataclass(frozen=True)
class PolyBound:
    """p(n) = c*n^k + d over natural n."""

    c: int
    k: int
    d: int

    def __post_init__(self):
        if self.c < 0 or self.k < 0 or self.d < 0:
            raise VmError("polynomial bound parts must be nonnegative")
        if self.c == 0 and self.d == 0:
            raise VmError("degenerate zero bound")

    def __call__(self, n: int) -> int:
        return self.c * n**self.k + self.d

    def as_text(self) -> str:
        return f"{self.c}*n^{self.k}+{self.d}"


@dataclass(frozen=True)
class VerifierProgram:
    name: str
    arity: int
    n_regs: int
    budget: PolyBound
    instrs: tuple[tuple, ...]
    output_width: int = 0  # declared EMIT count for transformers; 0 = verdict only

    def __post_init__(self):
        if self.arity < 0 or self.n_regs < 1:
            raise VmError("bad arity or register count")
        for idx, ins in enumerate(self.instrs):
            op = ins[0]
            regs: tuple[int, ...] = ()
            if op in _THREE_REG:
                regs = ins[1:4]
            elif op in ("MOV", "NOT"):
                regs = ins[1:3]
            elif op in ("SHL", "SHR"):
                regs = ins[1:3]
                if not 0 <= ins[3] < 32:
                    raise VmError(f"instr {idx}: shift immediate out of range")
            elif op == "CONST":
                regs = (ins[1],)
                if not 0 <= ins[2] <= MASK:
                    raise VmError(f"instr {idx}: immediate out of range")
            elif op == "LOADLEN":
                regs = (ins[1],)
                self._check_input(idx, ins[2])
            elif op in ("LOADBIT", "LOADW"):
                regs = (ins[1], ins[3])
                self._check_input(idx, ins[2])
            elif op == "JMP":
                self._check_target(idx, ins[1])
            elif op in ("JZ", "JNZ"):
                regs = (ins[1],)
                self._check_target(idx, ins[2])
            elif op in ("ACCEPT", "REJECT", "QUERY"):
                pass
            elif op in ("EMIT", "QPUSH"):
                regs = (ins[1],)
            elif op in ("ALEN",):
                regs = (ins[1],)
            elif op == "ABIT":
                regs = (ins[1], ins[2])
            else:
                raise VmError(f"instr {idx}: unknown op {op}")
            for r in regs:
                if not 0 <= r < self.n_regs:
                    raise VmError(f"instr {idx}: register r{r} out of range")

    def _check_input(self, idx: int, i: int):
        if not 0 <= i < self.arity:
            raise VmError(f"instr {idx}: input index {i} out of range")

    def _check_target(self, idx: int, t: int):
        # target == len(instrs) is the explicit fall-off-the-end reject slot
        if not 0 <= t <= len(self.instrs):
            raise VmError(f"instr {idx}: jump target {t} out of range")

    @property
    def uses_oracle(self) -> bool:
        return any(ins[0] in _ORACLE_OPS for ins in self.instrs)


@dataclass(frozen=True)
class OracleCall:
    query: str
    answer: str


@dataclass(frozen=True)
class RunResult:
    verdict: str  # ACCEPT / REJECT
    steps: int
    output: str
    oracle_calls: tuple[OracleCall, ...] = ()
    trace: tuple[tuple[int, str], ...] | None = None

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT


def bits_to_int(bits: str) -> int:
    """LSB-first value of a bit string (empty string is 0)."""
    v = 0
    for i, b in enumerate(bits):
        if b == "1":
            v |= 1 << i
    return v


def int_to_bits(value: int, width: int | None = None) -> str:
    """LSB-first bits; canonical (no trailing zeros) unless width is given."""
    if value < 0:
        raise VmError("bit strings encode nonnegative values")
    if width is None:
        if value == 0:
            return ""
        width = value.bit_length()
    return "".join("1" if (value >> i) & 1 else "0" for i in range(width))


def run(
    prog: VerifierProgram,
    inputs: Sequence[str],
    oracle: Callable[[str], str] | None = None,
    collect_trace: bool = False,
) -> RunResult:
    """Interpret the program on the given inputs within its step budget."""
    if len(inputs) != prog.arity:
        raise VmError(f"program {prog.name!r} expects {prog.arity} inputs, got {len(inputs)}")
    for s in inputs:
        if any(ch not in "01" for ch in s):
            raise VmError("inputs must be bit strings over 0/1")
    if prog.uses_oracle and oracle is None:
        raise VmError(f"program {prog.name!r} needs an oracle")

    total = sum(len(s) for s in inputs)
    budget = prog.budget(total)
    regs = [0] * prog.n_regs
    instrs = prog.instrs
    n_instr = len(instrs)
    pc = 0
    steps = 0
    out: list[str] = []
    qbuf: list[str] = []
    answer = ""
    calls: list[OracleCall] = []
    trace: list[tuple[int, str]] = [] if collect_trace else None

    while True:
        if pc >= n_instr:
            verdict = REJECT
            break
        if steps >= budget:
            raise BudgetExceeded(prog.name, budget)
        ins = instrs[pc]
        op = ins[0]
        steps += 1
        if collect_trace:
            trace.append((pc, op))
        if op == "ADD":
            regs[ins[1]] = (regs[ins[2]] + regs[ins[3]]) & MASK
        elif op == "SUB":
            regs[ins[1]] = (regs[ins[2]] - regs[ins[3]]) & MASK
        elif op == "MUL":
            regs[ins[1]] = (regs[ins[2]] * regs[ins[3]]) & MASK
        elif op == "DIV":
            b = regs[ins[3]]
            regs[ins[1]] = regs[ins[2]] // b if b else 0
        elif op == "MOD":
            b = regs[ins[3]]
            regs[ins[1]] = regs[ins[2]] % b if b else 0
        elif op == "AND":
            regs[ins[1]] = regs[ins[2]] & regs[ins[3]]
        elif op == "OR":
            regs[ins[1]] = regs[ins[2]] | regs[ins[3]]
        elif op == "XOR":
            regs[ins[1]] = regs[ins[2]] ^ regs[ins[3]]
        elif op == "NOT":
            regs[ins[1]] = (~regs[ins[2]]) & MASK
        elif op == "MOV":
            regs[ins[1]] = regs[ins[2]]
        elif op == "CONST":
            regs[ins[1]] = ins[2]
        elif op == "SHL":
            regs[ins[1]] = (regs[ins[2]] << ins[3]) & MASK
        elif op == "SHR":
            regs[ins[1]] = regs[ins[2]] >> ins[3]
        elif op == "SHLR":
            amt = regs[ins[3]]
            regs[ins[1]] = (regs[ins[2]] << amt) & MASK if amt < 32 else 0
        elif op == "SHRR":
            amt = regs[ins[3]]
            regs[ins[1]] = regs[ins[2]] >> amt if amt < 32 else 0
        elif op == "EQ":
            regs[ins[1]] = 1 if regs[ins[2]] == regs[ins[3]] else 0
        elif op == "LT":
            regs[ins[1]] = 1 if regs[ins[2]] < regs[ins[3]] else 0
        elif op == "LE":
            regs[ins[1]] = 1 if regs[ins[2]] <= regs[ins[3]] else 0
        elif op == "LOADLEN":
            regs[ins[1]] = len(inputs[ins[2]])
        elif op == "LOADBIT":
            s = inputs[ins[2]]
            p = regs[ins[3]]
            regs[ins[1]] = 1 if p < len(s) and s[p] == "1" else 0
        elif op == "LOADW":
            s = inputs[ins[2]]
            p = regs[ins[3]]
            seg = s[p : p + 32] if p < len(s) else ""
            regs[ins[1]] = int(seg[::-1], 2) if seg else 0
        elif op == "JMP":
            pc = ins[1]
            continue
        elif op == "JZ":
            if regs[ins[1]] == 0:
                pc = ins[2]
                continue
        elif op == "JNZ":
            if regs[ins[1]] != 0:
                pc = ins[2]
                continue
        elif op == "ACCEPT":
            verdict = ACCEPT
            break
        elif op == "REJECT":
            verdict = REJECT
            break
        elif op == "EMIT":
            out.append("1" if regs[ins[1]] & 1 else "0")
        elif op == "QPUSH":
            qbuf.append("1" if regs[ins[1]] & 1 else "0")
        elif op == "QUERY":
            q = "".join(qbuf)
            answer = oracle(q)
            if any(ch not in "01" for ch in answer):
                raise VmError("oracle answers must be bit strings")
            calls.append(OracleCall(q, answer))
            qbuf = []
        elif op == "ALEN":
            regs[ins[1]] = len(answer)
        elif op == "ABIT":
            p = regs[ins[2]]
            regs[ins[1]] = 1 if p < len(answer) and answer[p] == "1" else 0
        pc += 1

    return RunResult(
        verdict=verdict,
        steps=steps,
        output="".join(out),
        oracle_calls=tuple(calls),
        trace=tuple(trace) if collect_trace else None,
    )
