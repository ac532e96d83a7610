"""Boolean circuits (optionally with oracle gates), evaluation, composition.

Gates are tuples, id = position, references always point backwards:

    ("IN", i)                input bit i
    ("CONST", b)             constant
    ("NOT", a) / ("BUF", a)
    ("AND", a, b) / ("OR", a, b)
    ("ORACLE", enable, (q0..q_{k-1}), aw)   oracle call, aw answer bits
    ("ORAOUT", g, j)         answer bit j of oracle gate g

Oracle semantics: when the enable wire is 0 the answer is all zeros and
the oracle is not consulted.  The serializer keeps the ORAOUT gates of an
oracle immediately after it, in bit order; the transcript checker relies
on that layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


class CircuitError(ValueError):
    pass


class GateCapExceeded(CircuitError):
    pass


@dataclass(frozen=True)
class BoolCircuit:
    n_inputs: int
    gates: tuple[tuple, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        for gid, g in enumerate(self.gates):
            op = g[0]
            if op == "IN":
                if not 0 <= g[1] < self.n_inputs:
                    raise CircuitError(f"gate {gid}: input index {g[1]} out of range")
            elif op == "CONST":
                pass
            elif op in ("NOT", "BUF"):
                if not 0 <= g[1] < gid:
                    raise CircuitError(f"gate {gid}: forward reference")
            elif op in ("AND", "OR"):
                if not (0 <= g[1] < gid and 0 <= g[2] < gid):
                    raise CircuitError(f"gate {gid}: forward reference")
            elif op == "ORACLE":
                enable, queries, aw = g[1], g[2], g[3]
                if not 0 <= enable < gid:
                    raise CircuitError(f"gate {gid}: forward reference in enable")
                for q in queries:
                    if not 0 <= q < gid:
                        raise CircuitError(f"gate {gid}: forward reference in query")
                if aw < 1:
                    raise CircuitError(f"gate {gid}: oracle answer width must be >= 1")
            elif op == "ORAOUT":
                src, j = g[1], g[2]
                if not 0 <= src < gid or self.gates[src][0] != "ORACLE":
                    raise CircuitError(f"gate {gid}: ORAOUT must reference an earlier ORACLE")
                if not 0 <= j < self.gates[src][3]:
                    raise CircuitError(f"gate {gid}: answer bit {j} out of range")
            else:
                raise CircuitError(f"gate {gid}: unknown op {op}")
        for o in self.outputs:
            if not 0 <= o < len(self.gates):
                raise CircuitError(f"output {o} out of range")

    @property
    def has_oracle(self) -> bool:
        return any(g[0] == "ORACLE" for g in self.gates)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)


@dataclass(frozen=True)
class OracleRecord:
    gate: int
    enabled: bool
    query: str
    answer: str


@dataclass(frozen=True)
class Transcript:
    gate_values: tuple[bool, ...]
    oracle_calls: tuple[OracleRecord, ...]

    def bits(self) -> str:
        return "".join("1" if v else "0" for v in self.gate_values)


def _check_input(c: BoolCircuit, bits: str):
    if len(bits) != c.n_inputs:
        raise CircuitError(f"input width {len(bits)} != declared {c.n_inputs}")


def eval_circuit(c: BoolCircuit, bits: str) -> str:
    """Evaluate a plain circuit, gate by gate in topological order."""
    if c.has_oracle:
        raise CircuitError("circuit has oracle gates; use eval_oracle_circuit")
    _check_input(c, bits)
    vals: list[bool] = []
    for g in c.gates:
        op = g[0]
        if op == "IN":
            vals.append(bits[g[1]] == "1")
        elif op == "CONST":
            vals.append(bool(g[1]))
        elif op == "NOT":
            vals.append(not vals[g[1]])
        elif op == "BUF":
            vals.append(vals[g[1]])
        elif op == "AND":
            vals.append(vals[g[1]] and vals[g[2]])
        else:
            vals.append(vals[g[1]] or vals[g[2]])
    return "".join("1" if vals[o] else "0" for o in c.outputs)


def eval_oracle_circuit(
    c: BoolCircuit, bits: str, oracle: Callable[[str], str]
) -> tuple[str, Transcript]:
    """Evaluate with an oracle; returns outputs plus the full transcript.

    The oracle must return exactly the declared answer width for every
    query.  Disabled oracle gates answer all zeros without a call.
    """
    _check_input(c, bits)
    vals: list[bool] = []
    answers: dict[int, str] = {}
    calls: list[OracleRecord] = []
    for gid, g in enumerate(c.gates):
        op = g[0]
        if op == "IN":
            vals.append(bits[g[1]] == "1")
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
            query = "".join("1" if vals[q] else "0" for q in queries)
            if vals[enable]:
                ans = oracle(query)
                if len(ans) != aw:
                    raise CircuitError(
                        f"oracle answered {len(ans)} bits, declared width is {aw}"
                    )
                answers[gid] = ans
                calls.append(OracleRecord(gid, True, query, ans))
            else:
                answers[gid] = "0" * aw
                calls.append(OracleRecord(gid, False, query, "0" * aw))
            vals.append(False)  # the ORACLE node itself carries no value
        else:  # ORAOUT
            vals.append(answers[g[1]][g[2]] == "1")
    out = "".join("1" if vals[o] else "0" for o in c.outputs)
    return out, Transcript(tuple(vals), tuple(calls))


def eval_circuit_vector(c: BoolCircuit, lanes: np.ndarray) -> np.ndarray:
    """Vectorized evaluation: lanes is (n_inputs, n) bool, returns (n_outputs, n).

    Frees intermediate values after their last use so multi-million-gate
    compiled circuits stay within memory.
    """
    if c.has_oracle:
        raise CircuitError("vector evaluation does not support oracle gates")
    if lanes.shape[0] != c.n_inputs:
        raise CircuitError(f"lane width {lanes.shape[0]} != declared {c.n_inputs}")
    n = lanes.shape[1]
    last_use = [0] * len(c.gates)
    for gid, g in enumerate(c.gates):
        op = g[0]
        if op in ("NOT", "BUF"):
            last_use[g[1]] = gid
        elif op in ("AND", "OR"):
            last_use[g[1]] = gid
            last_use[g[2]] = gid
    for o in c.outputs:
        last_use[o] = len(c.gates)

    vals: dict[int, np.ndarray] = {}
    keep = set(c.outputs)
    for gid, g in enumerate(c.gates):
        op = g[0]
        if op == "IN":
            v = lanes[g[1]]
        elif op == "CONST":
            v = np.full(n, bool(g[1]))
        elif op == "NOT":
            v = ~vals[g[1]]
        elif op == "BUF":
            v = vals[g[1]]
        elif op == "AND":
            v = vals[g[1]] & vals[g[2]]
        else:
            v = vals[g[1]] | vals[g[2]]
        vals[gid] = v
        for ref in g[1:3]:
            if isinstance(ref, int) and ref in vals and last_use[ref] <= gid and ref not in keep:
                if op in ("NOT", "BUF", "AND", "OR"):
                    del vals[ref]
    return np.stack([vals[o] for o in c.outputs]) if c.outputs else np.zeros((0, n), bool)


def all_input_lanes(width: int) -> np.ndarray:
    """All 2^width inputs as lanes, input bit i varying with period 2^i."""
    n = 1 << width
    idx = np.arange(n)
    return np.stack([((idx >> i) & 1).astype(bool) for i in range(width)])


def compose_circuits(outer: BoolCircuit, inner: BoolCircuit) -> BoolCircuit:
    """Circuit computing outer(inner(z)); widths must agree."""
    if outer.has_oracle or inner.has_oracle:
        raise CircuitError("compose_circuits requires plain circuits")
    if inner.n_outputs != outer.n_inputs:
        raise CircuitError(
            f"inner outputs {inner.n_outputs} != outer inputs {outer.n_inputs}"
        )
    gates = list(inner.gates)
    offset = len(gates)
    for g in outer.gates:
        op = g[0]
        if op == "IN":
            gates.append(("BUF", inner.outputs[g[1]]))
        elif op == "CONST":
            gates.append(g)
        elif op in ("NOT", "BUF"):
            gates.append((op, g[1] + offset))
        else:
            gates.append((op, g[1] + offset, g[2] + offset))
    outputs = tuple(o + offset for o in outer.outputs)
    return BoolCircuit(inner.n_inputs, tuple(gates), outputs)


class CircuitBuilder:
    """Incremental builder with hash-consing and constant folding."""

    def __init__(self, n_inputs: int, gate_cap: int | None = None):
        self.n_inputs = n_inputs
        self.gate_cap = gate_cap
        self.gates: list[tuple] = []
        self._cache: dict[tuple, int] = {}
        self._const: dict[bool, int] = {}

    def _add(self, gate: tuple) -> int:
        if self.gate_cap is not None and len(self.gates) >= self.gate_cap:
            raise GateCapExceeded(f"gate cap {self.gate_cap} exceeded")
        self.gates.append(gate)
        return len(self.gates) - 1

    def is_const(self, g: int) -> bool | None:
        gate = self.gates[g]
        if gate[0] == "CONST":
            return bool(gate[1])
        return None

    def input(self, i: int) -> int:
        key = ("IN", i)
        if key not in self._cache:
            self._cache[key] = self._add(key)
        return self._cache[key]

    def const(self, b: bool) -> int:
        b = bool(b)
        if b not in self._const:
            self._const[b] = self._add(("CONST", b))
        return self._const[b]

    def not_(self, a: int) -> int:
        ca = self.is_const(a)
        if ca is not None:
            return self.const(not ca)
        g = self.gates[a]
        if g[0] == "NOT":
            return g[1]
        key = ("NOT", a)
        if key not in self._cache:
            self._cache[key] = self._add(key)
        return self._cache[key]

    def and_(self, a: int, b: int) -> int:
        ca, cb = self.is_const(a), self.is_const(b)
        if ca is False or cb is False:
            return self.const(False)
        if ca is True:
            return b
        if cb is True:
            return a
        if a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("AND", a, b)
        if key not in self._cache:
            self._cache[key] = self._add(key)
        return self._cache[key]

    def or_(self, a: int, b: int) -> int:
        ca, cb = self.is_const(a), self.is_const(b)
        if ca is True or cb is True:
            return self.const(True)
        if ca is False:
            return b
        if cb is False:
            return a
        if a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("OR", a, b)
        if key not in self._cache:
            self._cache[key] = self._add(key)
        return self._cache[key]

    def buf(self, a: int) -> int:
        # Real gate on purpose: used to pin outputs at canonical positions.
        return self._add(("BUF", a))

    def xor(self, a: int, b: int) -> int:
        return self.or_(self.and_(a, self.not_(b)), self.and_(self.not_(a), b))

    def xnor(self, a: int, b: int) -> int:
        return self.not_(self.xor(a, b))

    def mux(self, s: int, if1: int, if0: int) -> int:
        if if1 == if0:
            return if1
        return self.or_(self.and_(s, if1), self.and_(self.not_(s), if0))

    def or_many(self, xs: Sequence[int]) -> int:
        acc = self.const(False)
        for x in xs:
            acc = self.or_(acc, x)
        return acc

    def and_many(self, xs: Sequence[int]) -> int:
        acc = self.const(True)
        for x in xs:
            acc = self.and_(acc, x)
        return acc

    def oracle(self, enable: int, queries: Sequence[int], answer_width: int) -> list[int]:
        """Add an oracle gate; returns the answer-bit gate ids (consecutive).

        A constantly-disabled oracle answers all zeros and is folded away.
        """
        if self.is_const(enable) is False:
            return [self.const(False)] * answer_width
        og = self._add(("ORACLE", enable, tuple(queries), answer_width))
        return [self._add(("ORAOUT", og, j)) for j in range(answer_width)]

    def finish(self, outputs: Sequence[int]) -> BoolCircuit:
        return BoolCircuit(self.n_inputs, tuple(self.gates), tuple(outputs))


# --- serialization -------------------------------------------------------

def circuit_to_lines(c: BoolCircuit) -> str:
    lines = [f"INPUTS {c.n_inputs}"]
    for g in c.gates:
        op = g[0]
        if op == "IN":
            lines.append(f"INPUT {g[1]}")
        elif op == "CONST":
            lines.append(f"CONST {1 if g[1] else 0}")
        elif op in ("NOT", "BUF"):
            lines.append(f"{op} {g[1]}")
        elif op in ("AND", "OR"):
            lines.append(f"{op} {g[1]} {g[2]}")
        elif op == "ORACLE":
            qs = " ".join(str(q) for q in g[2])
            lines.append(f"ORACLE {g[1]} {g[3]} {qs}".rstrip())
        else:
            lines.append(f"ORAOUT {g[1]} {g[2]}")
    lines.append("OUTPUT " + " ".join(str(o) for o in c.outputs) if c.outputs else "OUTPUT")
    return "\n".join(lines) + "\n"


def circuit_from_lines(text: str) -> BoolCircuit:
    n_inputs = None
    gates: list[tuple] = []
    outputs: tuple[int, ...] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == "INPUTS":
                n_inputs = int(parts[1])
            elif head == "INPUT":
                gates.append(("IN", int(parts[1])))
            elif head == "CONST":
                gates.append(("CONST", bool(int(parts[1]))))
            elif head in ("NOT", "BUF"):
                gates.append((head, int(parts[1])))
            elif head in ("AND", "OR"):
                gates.append((head, int(parts[1]), int(parts[2])))
            elif head == "ORACLE":
                enable, aw = int(parts[1]), int(parts[2])
                qs = tuple(int(x) for x in parts[3:])
                gates.append(("ORACLE", enable, qs, aw))
            elif head == "ORAOUT":
                gates.append(("ORAOUT", int(parts[1]), int(parts[2])))
            elif head == "OUTPUT":
                outputs = tuple(int(x) for x in parts[1:])
            else:
                raise CircuitError(f"line {lineno}: unknown directive {head!r}")
        except (IndexError, ValueError) as e:
            raise CircuitError(f"line {lineno}: {e}") from None
    if n_inputs is None or outputs is None:
        raise CircuitError("missing INPUTS header or OUTPUT footer")
    return BoolCircuit(n_inputs, tuple(gates), outputs)


# --- fixed-field bit encoding (parseable by verifier programs) ----------

_OPCODES = {"IN": 0, "CONST": 1, "NOT": 2, "AND": 3, "OR": 4, "BUF": 5, "ORACLE": 6, "ORAOUT": 7}
_OPNAMES = {v: k for k, v in _OPCODES.items()}


def _u(value: int, width: int) -> str:
    if value < 0 or value >= (1 << width):
        raise CircuitError(f"field value {value} out of range for u{width}")
    return "".join("1" if (value >> i) & 1 else "0" for i in range(width))


def _ru(bits: str, pos: int, width: int) -> tuple[int, int]:
    if pos + width > len(bits):
        raise CircuitError("truncated circuit encoding")
    v = 0
    for i in range(width):
        if bits[pos + i] == "1":
            v |= 1 << i
    return v, pos + width


def circuit_to_bits(c: BoolCircuit) -> str:
    """Bit-level encoding: u16 header fields, u4 opcode, u16 operands."""
    out = [_u(c.n_inputs, 16), _u(len(c.gates), 16), _u(len(c.outputs), 16)]
    for g in c.gates:
        op = g[0]
        out.append(_u(_OPCODES[op], 4))
        if op == "IN":
            out.append(_u(g[1], 16))
        elif op == "CONST":
            out.append(_u(1 if g[1] else 0, 16))
        elif op in ("NOT", "BUF"):
            out.append(_u(g[1], 16))
        elif op in ("AND", "OR"):
            out.append(_u(g[1], 16))
            out.append(_u(g[2], 16))
        elif op == "ORACLE":
            out.append(_u(g[1], 16))
            out.append(_u(len(g[2]), 16))
            out.append(_u(g[3], 16))
            for q in g[2]:
                out.append(_u(q, 16))
        else:
            out.append(_u(g[1], 16))
            out.append(_u(g[2], 16))
    for o in c.outputs:
        out.append(_u(o, 16))
    return "".join(out)


def circuit_from_bits(bits: str) -> BoolCircuit:
    pos = 0
    n_inputs, pos = _ru(bits, pos, 16)
    n_gates, pos = _ru(bits, pos, 16)
    n_outputs, pos = _ru(bits, pos, 16)
    gates: list[tuple] = []
    for _ in range(n_gates):
        opc, pos = _ru(bits, pos, 4)
        if opc not in _OPNAMES:
            raise CircuitError(f"unknown opcode {opc}")
        op = _OPNAMES[opc]
        if op == "IN":
            a, pos = _ru(bits, pos, 16)
            gates.append(("IN", a))
        elif op == "CONST":
            a, pos = _ru(bits, pos, 16)
            gates.append(("CONST", bool(a)))
        elif op in ("NOT", "BUF"):
            a, pos = _ru(bits, pos, 16)
            gates.append((op, a))
        elif op in ("AND", "OR"):
            a, pos = _ru(bits, pos, 16)
            b, pos = _ru(bits, pos, 16)
            gates.append((op, a, b))
        elif op == "ORACLE":
            enable, pos = _ru(bits, pos, 16)
            qw, pos = _ru(bits, pos, 16)
            aw, pos = _ru(bits, pos, 16)
            qs = []
            for _ in range(qw):
                q, pos = _ru(bits, pos, 16)
                qs.append(q)
            gates.append(("ORACLE", enable, tuple(qs), aw))
        else:
            a, pos = _ru(bits, pos, 16)
            b, pos = _ru(bits, pos, 16)
            gates.append(("ORAOUT", a, b))
    outputs = []
    for _ in range(n_outputs):
        o, pos = _ru(bits, pos, 16)
        outputs.append(o)
    if pos != len(bits):
        raise CircuitError("trailing bits after circuit encoding")
    return BoolCircuit(n_inputs, tuple(gates), tuple(outputs))
