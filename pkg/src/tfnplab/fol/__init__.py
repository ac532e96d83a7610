"""First-order syntax, Herbrand machinery, numerals, and padding."""

from .herbrand import (
    GroundConjunction,
    enumerate_herbrand_terms,
    herbrand_expand,
    herbrand_term_stream,
    substitute,
    substitute_matrix,
    term_at,
    term_index,
    universe_size,
)
from .numerals import (
    ARITH_SIGNATURE,
    binary_numeral,
    bits_of,
    eval_arith_term,
    numeral_size,
)
from .padding import pad_sentence, pad_width
from .syntax import (
    Atom,
    FALSUM_NODE,
    FolError,
    Matrix,
    ParseError,
    Signature,
    Term,
    UniversalSentence,
    atom,
    m_and,
    m_implies,
    m_not,
    m_or,
    matrix_from_json,
    matrix_to_json,
    parse_sentence,
    parse_term,
    print_matrix,
    print_sentence,
    sentence_from_json,
    sentence_to_json,
    signature_from_json,
    signature_to_json,
    term_from_json,
    term_to_json,
    validate_matrix,
    validate_term,
)

__all__ = [
    "GroundConjunction",
    "enumerate_herbrand_terms",
    "herbrand_expand",
    "herbrand_term_stream",
    "substitute",
    "substitute_matrix",
    "term_at",
    "term_index",
    "universe_size",
    "ARITH_SIGNATURE",
    "binary_numeral",
    "bits_of",
    "eval_arith_term",
    "numeral_size",
    "pad_sentence",
    "pad_width",
    "Atom",
    "FALSUM_NODE",
    "FolError",
    "Matrix",
    "ParseError",
    "Signature",
    "Term",
    "UniversalSentence",
    "atom",
    "m_and",
    "m_implies",
    "m_not",
    "m_or",
    "matrix_from_json",
    "matrix_to_json",
    "parse_sentence",
    "parse_term",
    "print_matrix",
    "print_sentence",
    "sentence_from_json",
    "sentence_to_json",
    "signature_from_json",
    "signature_to_json",
    "term_from_json",
    "term_to_json",
    "validate_matrix",
    "validate_term",
]
