"""
Witness constructions that carry lower bounds from one basis to another.

A witness (a, A) for the seed basis lifts to the DKK space as the vector
constant on blocks with value a_n / Lambda_|sigma_n| on sigma_n: Q kills it,
v_n* returns a_n, so its gauge equals ||sum a_n x_n||_X and projecting onto
the union of the blocks in A reproduces the seed ratio.
"""

from collections.abc import Sequence

import numpy as np
from loguru import logger

from dkk_lab.bases import copy_offsets
from dkk_lab.condest.conditionality import MAX_EXACT_M, compute_L_m
from dkk_lab.condest.projection import ProjNormResult, Witness
from dkk_lab.dkk import DkkSpace
from dkk_lab.error import DomainError, ErrorCode
from dkk_lab.search import alternating_set, random_subsets


def _block_candidates(
    space: DkkSpace, r: int, inner_dim_cap: int, budget: int, seed: int
) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    candidates: list[tuple[np.ndarray, tuple[int, ...]]] = []
    trunc = space.basis.truncate(r)
    if r <= min(inner_dim_cap, MAX_EXACT_M) and trunc.exact_kind is not None:
        inner = compute_L_m(space.basis, r, mode="exact")
        if inner.witness is not None:
            candidates.append((inner.witness.vector, inner.witness.subset))

    alternating = np.where(np.arange(r) % 2 == 0, 1.0, -1.0)
    candidates.append((alternating, alternating_set(r)))
    candidates.append((np.ones(r), (0,)))

    rng = np.random.default_rng(seed)
    for subset in random_subsets(rng, r, budget):
        candidates.append((rng.standard_normal(r), subset))
    return candidates


def dkk_witness_lb(
    space: DkkSpace,
    r: int,
    inner_dim_cap: int = MAX_EXACT_M,
    budget: int = 32,
    seed: int = 0,
) -> ProjNormResult:
    """Lower bound for L_(M_r) of the unit-vector system of ``space``.

    Candidates are the exact L_r witness of the seed basis (when r is
    within ``inner_dim_cap``), the alternating pattern and ``budget``
    seeded random ones; each is lifted and re-evaluated with the gauge.
    """
    if not 1 <= r <= space.horizon:
        raise DomainError(
            f"r must be in [1, {space.horizon}], got {r}",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    partition = space.partition
    m = int(partition.partial_sums[r - 1])

    best: Witness | None = None
    best_value = -1.0
    for a, blocks in _block_candidates(space, r, inner_dim_cap, budget, seed):
        f = space.lift_block_coefficients(a)[:m]
        witness = Witness.of(f, partition.block_union(blocks))
        value = witness.ratio(space)
        if value > best_value:
            best, best_value = witness, value

    logger.debug("DKK witness bound", space=space.label, r=r, m=m, value=best_value)
    return ProjNormResult(value=best_value, exact=False, witness=best)


def direct_sum_witness(witness: Witness) -> Witness:
    """Move a witness of B0 onto the B0 positions 0, 2, 4, ... of B0 (+) B1."""
    f = witness.vector
    out = np.zeros(max(2 * f.size - 1, 0))
    out[0::2] = f
    return Witness.of(out, [2 * j for j in witness.subset])


def block_repeat_witness(witness: Witness, sizes: Sequence[int], copy: int) -> Witness:
    """Move a witness of B0 into copy ``copy`` (0-based) of block_repeat(B0, sizes).

    The result lives on the first M_copy + |f| coefficients.
    """
    if not 0 <= copy < len(sizes):
        raise DomainError(
            f"copy must be in [0, {len(sizes)})",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    f = witness.vector
    if f.size > sizes[copy]:
        raise DomainError(
            f"Witness of length {f.size} does not fit copy {copy} of size {sizes[copy]}",
            code=ErrorCode.SUPPORT_OUT_OF_RANGE,
        )
    offset = copy_offsets(sizes)[copy]
    out = np.zeros(offset + f.size)
    out[offset:] = f
    return Witness.of(out, [offset + j for j in witness.subset])
