"""Binary numerals over the arithmetic term language {0, S, +, *}.

A number with bits a_1 a_2 ... a_k (most significant first) is represented
in Horner form

    (...((a_1 * 2) + a_2) * 2 ... + a_{k-1}) * 2 + a_k

where 2 is S(S(0)) and the digit terms are 0 and S(0).  The term for n
has O(log n) size; concretely, counting positive-arity symbol occurrences
(S, +, *; the constant 0 is a leaf and not counted), the size is at most
5*bits(n) - 4 <= 6*bits(n).
"""

from __future__ import annotations

from .syntax import Signature, Term

ARITH_SIGNATURE = Signature(
    functions=(("0", 0), ("S", 1), ("+", 2), ("*", 2)),
    relations=(("LE", 2),),
)

ZERO = Term("0")
ONE = Term("S", (ZERO,))
TWO = Term("S", (ONE,))


def binary_numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are defined for n >= 0")
    if n == 0:
        return ZERO
    bits = bin(n)[2:]  # most significant first
    acc = ONE if bits[0] == "1" else ZERO
    for b in bits[1:]:
        acc = Term("+", (Term("*", (acc, TWO)), ONE if b == "1" else ZERO))
    return acc


def eval_arith_term(t: Term) -> int:
    """Standard semantics over the naturals."""
    if t.head == "0":
        return 0
    if t.head == "S":
        return 1 + eval_arith_term(t.args[0])
    if t.head == "+":
        return eval_arith_term(t.args[0]) + eval_arith_term(t.args[1])
    if t.head == "*":
        return eval_arith_term(t.args[0]) * eval_arith_term(t.args[1])
    raise ValueError(f"not an arithmetic term head: {t.head}")


def numeral_size(t: Term) -> int:
    """Positive-arity symbol occurrences (the documented size measure)."""
    if not t.args:
        return 0
    return 1 + sum(numeral_size(a) for a in t.args)


def bits_of(n: int) -> int:
    """Length of the binary representation; bits_of(0) = 1."""
    return max(1, n.bit_length())
