"""
Conditionality constants.

L_m is the norm of S_A over vectors supported in the first m coordinates
(only A within those coordinates matters); k_m is the norm of S_A over sets
of at most m coordinates.
"""

from collections.abc import Iterable, Sequence
from typing import Literal

import numpy as np
from loguru import logger

from dkk_lab.bases import BasisRep, BasisTruncation
from dkk_lab.condest.projection import (
    ProjNormResult,
    Witness,
    as_truncation,
    batched_exact_norms,
    exact_projection,
    search_projection,
)
from dkk_lab.error import BudgetError, DomainError, ErrorCode
from dkk_lab.search import (
    MAX_ENUMERATED_SUBSETS,
    all_subset_masks,
    count_small_subsets,
    random_subsets,
    small_subset_masks,
    structured_subsets,
)

Mode = Literal["exact", "search"]

MAX_EXACT_M = 20


def _unconditional_result(dim: int) -> ProjNormResult:
    e = np.zeros(dim)
    e[0] = 1.0
    return ProjNormResult(value=1.0, exact=True, witness=Witness.of(e, (0,)))


def _best_of_masks(trunc: BasisTruncation, masks: np.ndarray) -> ProjNormResult:
    values = batched_exact_norms(trunc, masks)
    # argmax returns the first maximum, so ties resolve to the first mask enumerated
    best = int(np.argmax(values))
    return exact_projection(trunc, np.flatnonzero(masks[best]))


def _search_subsets(
    trunc: BasisTruncation,
    subsets: Iterable[Sequence[int]],
    rng: np.random.Generator,
    starts: int,
    sweeps: int,
    extra: Sequence[Witness],
) -> ProjNormResult:
    best: ProjNormResult | None = None
    for witness in extra:
        if len(witness.f) != trunc.dim:
            continue
        candidate = ProjNormResult(value=witness.ratio(trunc), exact=False, witness=witness)
        if best is None or candidate.value > best.value:
            best = candidate

    tried = 0
    for subset in subsets:
        tried += 1
        if trunc.exact_kind is not None:
            found = exact_projection(trunc, subset)
        else:
            found = search_projection(trunc, subset, rng, starts=starts, sweeps=sweeps)
        if best is None or found.value > best.value:
            best = found

    logger.debug("Subset search finished", basis=trunc.label, subsets=tried)
    if best is None:
        return ProjNormResult(value=0.0, exact=False, witness=None)
    return ProjNormResult(value=best.value, exact=False, witness=best.witness)


def compute_L_m(
    basis: BasisRep | BasisTruncation,
    m: int,
    mode: Mode = "exact",
    budget: int = 64,
    seed: int = 0,
    sweeps: int = 200,
    starts: int = 2,
    extra_candidates: Sequence[Witness] = (),
) -> ProjNormResult:
    """L_m of ``basis``.

    Exact mode enumerates every subset of the first m coordinates and needs
    an l_1, l_2 or l_inf ambient; otherwise it falls back to search. Search
    mode tries intervals, the alternating set, its complement and then
    ``budget`` seeded random subsets; ``extra_candidates`` are evaluated
    first and the result is never below any of them.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}", code=ErrorCode.INDEX_OUT_OF_RANGE)
    trunc = as_truncation(basis, m)
    if trunc.unconditional:
        return _unconditional_result(m)

    if mode == "exact":
        if m > MAX_EXACT_M:
            raise BudgetError(
                f"Exact L_m enumeration is capped at m = {MAX_EXACT_M}",
                limit=MAX_EXACT_M,
                requested=m,
            )
        if trunc.exact_kind is not None:
            logger.debug("Enumerating L_m exactly", basis=trunc.label, m=m)
            return _best_of_masks(trunc, all_subset_masks(m))
        logger.info("No exact norm path; searching instead", basis=trunc.label, m=m)

    rng = np.random.default_rng(seed)
    subsets = [*structured_subsets(m), *random_subsets(rng, m, budget)]
    return _search_subsets(trunc, subsets, rng, starts, sweeps, extra_candidates)


def compute_k_m(
    basis: BasisRep | BasisTruncation,
    m: int,
    dim: int,
    mode: Mode = "exact",
    budget: int = 64,
    seed: int = 0,
    sweeps: int = 200,
    starts: int = 2,
) -> ProjNormResult:
    """k_m of ``basis`` over sets of at most m coordinates among the first ``dim``.

    Exact when the ambient has a matrix-norm path and the number of small
    subsets stays under the enumeration cap; otherwise a search lower bound.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}", code=ErrorCode.INDEX_OUT_OF_RANGE)
    if m > dim:
        raise DomainError(
            f"m = {m} exceeds the working dimension {dim}",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    trunc = as_truncation(basis, dim)
    if trunc.unconditional:
        return _unconditional_result(dim)

    if mode == "exact" and trunc.exact_kind is not None:
        total = count_small_subsets(dim, m)
        if total <= MAX_ENUMERATED_SUBSETS:
            logger.debug("Enumerating k_m exactly", basis=trunc.label, m=m, subsets=total)
            return _best_of_masks(trunc, small_subset_masks(dim, m))
        raise BudgetError(
            f"Exact k_m needs {total} subsets",
            limit=MAX_ENUMERATED_SUBSETS,
            requested=total,
            code=ErrorCode.DIMENSION_CAP_EXCEEDED,
        )

    rng = np.random.default_rng(seed)
    subsets = [
        *structured_subsets(dim, max_size=m),
        *random_subsets(rng, dim, budget, max_size=m),
    ]
    return _search_subsets(trunc, subsets, rng, starts, sweeps, ())
