"""Greedy sets and sampled greedy-type constants."""

from .greedy import (
    GreedyTrace,
    Normer,
    admissible_greedy_sets,
    greedy_order,
    greedy_residuals,
    greedy_set,
    greedy_trace,
    is_greedy_set,
)
from .ratios import (
    MAX_SMALLCASE_DIM,
    AlmostGreedyEstimate,
    DemocracyEstimate,
    PhiEstimate,
    QuasiGreedyEstimate,
    almost_greedy_ratio_smallcase,
    fundamental_phi,
    partial_sum_ratio,
    qg_ratio_estimate,
    superdemocracy_ratio,
)

__all__ = [
    "Normer",
    "GreedyTrace",
    "greedy_order",
    "greedy_set",
    "is_greedy_set",
    "admissible_greedy_sets",
    "greedy_residuals",
    "greedy_trace",
    "QuasiGreedyEstimate",
    "PhiEstimate",
    "DemocracyEstimate",
    "AlmostGreedyEstimate",
    "MAX_SMALLCASE_DIM",
    "qg_ratio_estimate",
    "partial_sum_ratio",
    "fundamental_phi",
    "superdemocracy_ratio",
    "almost_greedy_ratio_smallcase",
]
