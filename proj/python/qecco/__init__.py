"""Learning physical realizations of logical gates for quantum error-correcting
codes, plus joint co-design of noise-tailored encodings and gate sets."""

from ._core import (
    Code,
    OperationLoss,
    PauliChannel,
    StateVector,
    __version__,
    distinguishability_loss,
    encode,
    encode_two_block,
    fidelity_pure,
    haar_random_state,
    known_gates,
    list_codes,
    lost_trace_distance,
    make_code,
    rea_code,
    train_operation,
    train_varqec,
    train_vareftqc,
    worst_distinguishability,
)

__all__ = [
    "Code",
    "OperationLoss",
    "PauliChannel",
    "StateVector",
    "__version__",
    "distinguishability_loss",
    "encode",
    "encode_two_block",
    "fidelity_pure",
    "haar_random_state",
    "known_gates",
    "list_codes",
    "lost_trace_distance",
    "make_code",
    "rea_code",
    "train_operation",
    "train_varqec",
    "train_vareftqc",
    "worst_distinguishability",
]
