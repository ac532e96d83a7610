"""Total polynomial search problems, reductions, completion, and the
registry-based universal problem."""

from .builtins import attach_builtin_hooks, builtin_names, builtin_problem
from .completion import turing_to_many_one, wrap_completion
from .examples import (
    PHP_SENTENCE,
    copy_problem,
    order_sentence,
    pigeon_to_hcs,
    query_once_reduction,
    two_query_reduction,
    xorflip_problem,
    zero_query_reduction,
)
from .problem import (
    SearchSpaceTooLarge,
    TFNPProblem,
    TotalityViolation,
    enumerate_witnesses,
    length_lex_strings,
    problem_from_files,
    problem_to_files,
    solve,
    solve_brute,
    verify_solution,
)
from .problems import (
    HcsEncoding,
    PigeonFamily,
    UnsupportedSentence,
    decode_hcs_instance,
    dense_witness_from_sparse,
    encode_hcs_instance,
    factoring_problem,
    family_from_circuit,
    hcs_encoding,
    hcs_problem,
    pigeon_problem,
    sparse_witness_from_dense,
    standard_families,
)
from .reductions import (
    CheckReport,
    HostTransformer,
    InstanceCheck,
    ManyOneReduction,
    ReductionUnsound,
    TuringReduction,
    apply_many_one,
    apply_transformer,
    broken_reduction,
    check_many_one,
    flatten_np_relation,
    identity_reduction,
    normalize_padding,
    pad_witness,
    unpad_witness,
)
from .registry import (
    CertificateError,
    ProblemRegistry,
    RegistryEntry,
    certify,
    embed_instance,
    embed_reduction,
    universal_problem,
)

__all__ = [
    "attach_builtin_hooks",
    "builtin_names",
    "builtin_problem",
    "turing_to_many_one",
    "wrap_completion",
    "PHP_SENTENCE",
    "copy_problem",
    "order_sentence",
    "pigeon_to_hcs",
    "query_once_reduction",
    "two_query_reduction",
    "xorflip_problem",
    "zero_query_reduction",
    "SearchSpaceTooLarge",
    "TFNPProblem",
    "TotalityViolation",
    "enumerate_witnesses",
    "length_lex_strings",
    "problem_from_files",
    "problem_to_files",
    "solve",
    "solve_brute",
    "verify_solution",
    "HcsEncoding",
    "PigeonFamily",
    "UnsupportedSentence",
    "decode_hcs_instance",
    "dense_witness_from_sparse",
    "encode_hcs_instance",
    "factoring_problem",
    "family_from_circuit",
    "hcs_encoding",
    "hcs_problem",
    "pigeon_problem",
    "sparse_witness_from_dense",
    "standard_families",
    "CheckReport",
    "HostTransformer",
    "InstanceCheck",
    "ManyOneReduction",
    "ReductionUnsound",
    "TuringReduction",
    "apply_many_one",
    "apply_transformer",
    "broken_reduction",
    "check_many_one",
    "flatten_np_relation",
    "identity_reduction",
    "normalize_padding",
    "pad_witness",
    "unpad_witness",
    "CertificateError",
    "ProblemRegistry",
    "RegistryEntry",
    "certify",
    "embed_instance",
    "embed_reduction",
    "universal_problem",
]
