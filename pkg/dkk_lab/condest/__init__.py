"""Conditionality constants: projection norms, L_m / k_m, witness transfers, growth fits."""

from .conditionality import MAX_EXACT_M, Mode, compute_k_m, compute_L_m
from .growth import GrowthFit, growth_check, log_growth_fit
from .projection import ProjNormResult, Witness, batched_exact_norms, proj_operator_norm
from .witness import block_repeat_witness, direct_sum_witness, dkk_witness_lb

__all__ = [
    "Witness",
    "ProjNormResult",
    "proj_operator_norm",
    "batched_exact_norms",
    "Mode",
    "MAX_EXACT_M",
    "compute_L_m",
    "compute_k_m",
    "dkk_witness_lb",
    "direct_sum_witness",
    "block_repeat_witness",
    "GrowthFit",
    "log_growth_fit",
    "growth_check",
]
