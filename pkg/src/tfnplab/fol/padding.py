"""Sentence padding: phi_m := phi | (false & ... & false) with m conjuncts.

The always-false conjunct is the dedicated falsum atom (the term language
need not contain equality, so there is no literal 0=1); the padded matrix
is logically equivalent to the original and its size grows linearly in m.
"""

from __future__ import annotations

from .syntax import FALSUM_NODE, FolError, Matrix, m_and, m_or


def pad_sentence(matrix: Matrix, m: int) -> Matrix:
    if m < 1:
        raise FolError("padding needs at least one conjunct")
    block = FALSUM_NODE
    for _ in range(m - 1):
        block = m_and(block, FALSUM_NODE)
    return m_or(matrix, block)


def pad_width(padded: Matrix) -> int | None:
    """Number of falsum conjuncts when `padded` has the padding shape."""
    if padded.op != "or":
        return None
    block = padded.children[1]
    count = 0
    while block.op == "and":
        if block.children[1].op != "false":
            return None
        count += 1
        block = block.children[0]
    if block.op != "false":
        return None
    return count + 1
