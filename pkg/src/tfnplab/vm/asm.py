"""Line-based assembly for verifier programs.

Header directives, then one instruction per line; `@label` lines name the
next instruction and jumps may reference labels or absolute indices.

    NAME equality
    ARITY 2
    REGS 4
    BUDGET 3 1 16        # c k d, budget = 3*n^1 + 16
    OUTPUT 0
    @loop
      LOADBIT r0, 0, r2
      JNZ r0, @loop
      ACCEPT
"""

from __future__ import annotations

import re

from .isa import PolyBound, VerifierProgram, VmError

_REG_RE = re.compile(r"^r(\d+)$")


def _fmt_operand(op: str, pos: int, value) -> str:
    reg_slots = {
        "CONST": [0], "MOV": [0, 1], "NOT": [0, 1],
        "ADD": [0, 1, 2], "SUB": [0, 1, 2], "MUL": [0, 1, 2], "DIV": [0, 1, 2],
        "MOD": [0, 1, 2], "AND": [0, 1, 2], "OR": [0, 1, 2], "XOR": [0, 1, 2],
        "SHLR": [0, 1, 2], "SHRR": [0, 1, 2], "EQ": [0, 1, 2], "LT": [0, 1, 2],
        "LE": [0, 1, 2], "SHL": [0, 1], "SHR": [0, 1],
        "LOADLEN": [0], "LOADBIT": [0, 2], "LOADW": [0, 2],
        "JZ": [0], "JNZ": [0], "EMIT": [0], "QPUSH": [0], "ALEN": [0],
        "ABIT": [0, 1],
    }
    if pos in reg_slots.get(op, []):
        return f"r{value}"
    return str(value)


def program_to_asm(prog: VerifierProgram) -> str:
    lines = [
        f"NAME {prog.name}",
        f"ARITY {prog.arity}",
        f"REGS {prog.n_regs}",
        f"BUDGET {prog.budget.c} {prog.budget.k} {prog.budget.d}",
        f"OUTPUT {prog.output_width}",
    ]
    targets = set()
    for ins in prog.instrs:
        if ins[0] == "JMP":
            targets.add(ins[1])
        elif ins[0] in ("JZ", "JNZ"):
            targets.add(ins[2])
    for idx, ins in enumerate(prog.instrs):
        if idx in targets:
            lines.append(f"@L{idx}")
        op = ins[0]
        rendered = []
        for pos, v in enumerate(ins[1:]):
            if (op == "JMP" and pos == 0) or (op in ("JZ", "JNZ") and pos == 1):
                rendered.append(f"@L{v}")
            else:
                rendered.append(_fmt_operand(op, pos, v))
        lines.append("  " + op + (" " + ", ".join(rendered) if rendered else ""))
    if len(prog.instrs) in targets:
        lines.append(f"@L{len(prog.instrs)}")
    return "\n".join(lines) + "\n"


def program_from_asm(text: str) -> VerifierProgram:
    name = "anonymous"
    arity = None
    n_regs = None
    budget = None
    output_width = 0
    raw: list[tuple[str, list[str]]] = []
    labels: dict[str, int] = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            labels[line[1:].strip()] = len(raw)
            continue
        parts = line.replace(",", " ").split()
        head = parts[0].upper()
        if head == "NAME":
            name = parts[1]
        elif head == "ARITY":
            arity = int(parts[1])
        elif head == "REGS":
            n_regs = int(parts[1])
        elif head == "BUDGET":
            budget = PolyBound(int(parts[1]), int(parts[2]), int(parts[3]))
        elif head == "OUTPUT":
            output_width = int(parts[1])
        else:
            raw.append((head, parts[1:]))
    if arity is None or n_regs is None or budget is None:
        raise VmError("missing ARITY, REGS, or BUDGET header")

    def operand(tok: str) -> int:
        m = _REG_RE.match(tok)
        if m:
            return int(m.group(1))
        if tok.startswith("@"):
            key = tok[1:]
            if key not in labels:
                raise VmError(f"unknown label {tok}")
            return labels[key]
        return int(tok, 0)

    instrs = tuple((op, *[operand(t) for t in toks]) for op, toks in raw)
    return VerifierProgram(
        name=name, arity=arity, n_regs=n_regs, budget=budget,
        instrs=instrs, output_width=output_width,
    )
