"""Partitions, averaging projections, the DKK gauge, its checks and constants."""

from .averaging import avg_projection, avg_rows, block_means, block_sums, q_projection, q_rows
from .checks import (
    EmbeddingCheck,
    InequalityCheck,
    TailProjectionCheck,
    averaging_bound_check,
    commuting_check,
    coordinate_bound_check,
    embedding_check,
    equivalent_norm_check,
    identity_check,
    inverse_round_trip_check,
    partial_sum_identity_check,
    round_trip_check,
    sandwich_check,
    tail_block,
    tail_projection_check,
    weight_norms,
)
from .constants import (
    BasisScales,
    LemmaConstants,
    basis_scales,
    dkk_of_repeated,
    lemma_constants,
    quasi_greedy_constant,
)
from .partition import MAX_DYADIC_HORIZON, Partition
from .space import DkkSpace, dkk_norm, g_map, h_map, v_coeffs

__all__ = [
    "Partition",
    "MAX_DYADIC_HORIZON",
    "avg_projection",
    "q_projection",
    "avg_rows",
    "q_rows",
    "block_sums",
    "block_means",
    "DkkSpace",
    "dkk_norm",
    "v_coeffs",
    "h_map",
    "g_map",
    "InequalityCheck",
    "EmbeddingCheck",
    "TailProjectionCheck",
    "identity_check",
    "averaging_bound_check",
    "equivalent_norm_check",
    "sandwich_check",
    "coordinate_bound_check",
    "embedding_check",
    "weight_norms",
    "commuting_check",
    "partial_sum_identity_check",
    "round_trip_check",
    "inverse_round_trip_check",
    "tail_block",
    "tail_projection_check",
    "BasisScales",
    "LemmaConstants",
    "basis_scales",
    "lemma_constants",
    "quasi_greedy_constant",
    "dkk_of_repeated",
]
