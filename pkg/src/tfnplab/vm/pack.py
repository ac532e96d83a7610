"""Self-delimiting tuple codec for bit strings.

Each part is prefixed with its length in unary (len ones then a zero), so

    encode((u, v)) = 1^|u| 0 u 1^|v| 0 v

The code is injective, decodes never crash (MALFORMED is a value), and
|encode(xs)| = sum(2|x_i| + 1) <= 2*total + number_of_parts.  The unary
prefix keeps decoding inside verifier bytecode to a counting loop.
"""

from __future__ import annotations

from typing import Sequence

MALFORMED = "MALFORMED"


def encode_tuple(parts: Sequence[str]) -> str:
    out = []
    for p in parts:
        if any(ch not in "01" for ch in p):
            raise ValueError("parts must be bit strings")
        out.append("1" * len(p) + "0" + p)
    return "".join(out)


def decode_tuple(bits: str, arity: int) -> tuple[str, ...] | str:
    """Decode into exactly `arity` parts, or the MALFORMED sentinel."""
    pos = 0
    parts: list[str] = []
    for _ in range(arity):
        n = 0
        while pos < len(bits) and bits[pos] == "1":
            n += 1
            pos += 1
        if pos >= len(bits) or bits[pos] != "0":
            return MALFORMED
        pos += 1
        if pos + n > len(bits):
            return MALFORMED
        parts.append(bits[pos : pos + n])
        pos += n
    if pos != len(bits):
        return MALFORMED
    return tuple(parts)


def encoded_length(part_lengths: Sequence[int]) -> int:
    return sum(2 * n + 1 for n in part_lengths)
