"""Sequence spaces, weights, regularity and the variation-space operators."""

from .duality import DualBound, bidemocracy_product, dual_norm_lb
from .operators import lifting_L, retraction_T
from .regularity import (
    LambdaShape,
    RegularityVerdict,
    as_lambda_fn,
    check_lrp,
    check_urp,
    dini_constant,
    lambda_shape_check,
    monotone_sequence_check,
)
from .sequences import (
    FiniteSequence,
    as_batch,
    as_sequence,
    fit_batch,
    fit_length,
    indicator,
    rearrange_nonincreasing,
    rearrange_rows,
    support,
)
from .spaces import (
    ExactKind,
    LorentzSpace,
    LpSpace,
    SequenceSpace,
    SymSpaceSpec,
    VariationSpace,
    WeakLorentzSpace,
    c0,
    eval_norm,
    explicit_weight,
    fundamental_lambda,
    lambda_star,
    lorentz,
    lp,
    power_weight,
    variation,
    weak_lorentz,
)
from .weights import (
    ClassicalLorentzWeight,
    ExplicitWeight,
    PowerWeight,
    Weight,
    cumulative_weights,
)

__all__ = [
    "FiniteSequence",
    "as_sequence",
    "as_batch",
    "fit_length",
    "fit_batch",
    "indicator",
    "support",
    "rearrange_nonincreasing",
    "rearrange_rows",
    "Weight",
    "PowerWeight",
    "ClassicalLorentzWeight",
    "ExplicitWeight",
    "cumulative_weights",
    "ExactKind",
    "SequenceSpace",
    "SymSpaceSpec",
    "LpSpace",
    "LorentzSpace",
    "WeakLorentzSpace",
    "VariationSpace",
    "lp",
    "c0",
    "lorentz",
    "weak_lorentz",
    "variation",
    "power_weight",
    "explicit_weight",
    "eval_norm",
    "fundamental_lambda",
    "lambda_star",
    "DualBound",
    "dual_norm_lb",
    "bidemocracy_product",
    "RegularityVerdict",
    "LambdaShape",
    "as_lambda_fn",
    "check_lrp",
    "check_urp",
    "dini_constant",
    "lambda_shape_check",
    "monotone_sequence_check",
    "lifting_L",
    "retraction_T",
]
