"""
Per-vector inequality and identity checks for DKK spaces.

Every check takes one sequence or a batch of rows and returns
InequalityCheck objects holding both sides per row; identities are
checked as deviation <= tolerance.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt

from dkk_lab.dkk.averaging import avg_rows, block_sums, q_rows
from dkk_lab.dkk.constants import LemmaConstants, basis_scales, lemma_constants
from dkk_lab.dkk.partition import Partition
from dkk_lab.dkk.space import DkkSpace
from dkk_lab.error import DomainError, ErrorCode, ErrorContext, HypothesisError
from dkk_lab.seqspace import SequenceSpace, as_batch, fit_batch, rearrange_rows

RTOL = 1e-9
ATOL = 1e-12
# Identities hold exactly up to rounding.
IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class InequalityCheck:
    """lhs <= rhs row by row, up to RTOL relative and ATOL absolute slack."""

    name: str
    lhs: npt.NDArray[np.float64]
    rhs: npt.NDArray[np.float64]

    @property
    def failed(self) -> npt.NDArray[np.bool_]:
        return self.lhs > self.rhs * (1.0 + RTOL) + ATOL

    @property
    def violations(self) -> int:
        return int(self.failed.sum())

    @property
    def ok(self) -> bool:
        return self.violations == 0

    @property
    def count(self) -> int:
        return int(self.lhs.size)

    @property
    def worst_ratio(self) -> float:
        """max lhs/rhs over rows with rhs > 0; 0 for an empty check."""
        if self.lhs.size == 0:
            return 0.0
        positive = self.rhs > 0.0
        ratios = np.zeros_like(self.lhs)
        ratios[positive] = self.lhs[positive] / self.rhs[positive]
        ratios[~positive & (self.lhs > ATOL)] = np.inf
        return float(ratios.max())

    @property
    def min_slack(self) -> float:
        return float(np.min(self.rhs - self.lhs)) if self.lhs.size else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "count": self.count,
            "violations": self.violations,
            "worst_ratio": self.worst_ratio,
            "min_slack": self.min_slack,
        }


def identity_check(
    name: str,
    left: npt.NDArray[np.float64],
    right: npt.NDArray[np.float64],
    scale: npt.NDArray[np.float64],
) -> InequalityCheck:
    """Row-wise max |left - right| against IDENTITY_TOL * max(1, scale)."""
    left2, right2 = as_batch(left), as_batch(right)
    deviation = np.abs(left2 - right2).max(axis=1, initial=0.0)
    return InequalityCheck(name, deviation, IDENTITY_TOL * np.maximum(1.0, scale))


def _rows(X: npt.ArrayLike, length: int) -> npt.NDArray[np.float64]:
    return fit_batch(as_batch(X), length)


def _select(batch: npt.NDArray[np.float64], positions: npt.ArrayLike) -> npt.NDArray[np.float64]:
    out = np.zeros_like(batch)
    idx = np.asarray(positions, dtype=np.intp)
    out[:, idx] = batch[:, idx]
    return out


def _sup(batch: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return np.abs(batch).max(axis=1, initial=0.0)


def averaging_bound_check(
    X: npt.ArrayLike, partition: Partition, space: SequenceSpace
) -> tuple[InequalityCheck, InequalityCheck]:
    """||P f||_S <= 2||f||_S and ||Q f||_S <= 3||f||_S."""
    batch = _rows(X, partition.total)
    base = space.norms(batch)
    p_norm = space.norms(avg_rows(batch, partition))
    q_norm = space.norms(q_rows(batch, partition))
    return (
        InequalityCheck("averaging.p_bound", p_norm, 2.0 * base),
        InequalityCheck("averaging.q_bound", q_norm, 3.0 * base),
    )


def equivalent_norm_check(X: npt.ArrayLike, Y: DkkSpace) -> tuple[InequalityCheck, InequalityCheck]:
    """||f||_S <= ||Q f||_S + ||P f||_S <= 5||f||_S."""
    batch = _rows(X, Y.dim)
    base = Y.space.norms(batch)
    split = Y.space.norms(q_rows(batch, Y.partition)) + Y.space.norms(avg_rows(batch, Y.partition))
    return (
        InequalityCheck("equivalent_norm.lower", base, split),
        InequalityCheck("equivalent_norm.upper", split, 5.0 * base),
    )


def sandwich_check(X: npt.ArrayLike, Y: DkkSpace) -> tuple[InequalityCheck, InequalityCheck]:
    """max(1, 1/mu)^-1 ||f||_S <= ||f||_Y <= (3 + 2 nu)||f||_S for rows inside one block.

    With a normalized seed basis these are the constants 1 and 5.
    """
    batch = _rows(X, Y.dim)
    for row in batch:
        touched = np.unique(Y.partition.labels[np.flatnonzero(row)])
        if touched.size > 1:
            raise DomainError(
                "Sandwich check needs every sample supported in a single block",
                code=ErrorCode.NOT_BLOCK_ALIGNED,
            )
    scales = basis_scales(Y)
    base = Y.space.norms(batch)
    gauge = Y.norms(batch)
    return (
        InequalityCheck("sandwich.lower", base, max(1.0, 1.0 / scales.mu) * gauge),
        InequalityCheck("sandwich.upper", gauge, (3.0 + 2.0 * scales.nu) * base),
    )


def coordinate_bound_check(X: npt.ArrayLike, Y: DkkSpace) -> InequalityCheck:
    """|a_k| <= max(1, kappa) / Lambda_1 * ||f||_Y for every coordinate."""
    scales = basis_scales(Y)
    if scales.kappa is None:
        raise HypothesisError(
            "functionals",
            "Coordinate functional norms of the seed basis are not available",
            context=ErrorContext(operation="coordinate_bound_check"),
        )
    batch = _rows(X, Y.dim)
    lam1 = float(Y.space.lambdas([1])[0])
    bound = max(1.0, scales.kappa) / lam1
    return InequalityCheck("coordinate_bound", _sup(batch), bound * Y.norms(batch))


@dataclass(frozen=True)
class EmbeddingCheck:
    """Both embedding inequalities, plus the Dini form when Lambda has the LRP."""

    lower: InequalityCheck
    upper: InequalityCheck
    dini: InequalityCheck | None = None

    @property
    def checks(self) -> list[InequalityCheck]:
        return [c for c in (self.lower, self.upper, self.dini) if c is not None]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {c.name: c.to_dict() for c in self.checks}


def weight_norms(
    X: npt.ArrayLike, space: SequenceSpace, dim: int
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """(d_1^inf(w), d_1(w), d_1(w')) with w_n = Lambda_n - Lambda_(n-1), w'_n = Lambda_n / n."""
    batch = _rows(X, dim)
    R = rearrange_rows(batch)
    n = np.arange(1, dim + 1)
    lam = space.lambdas(n)
    weak = (R * lam).max(axis=1, initial=0.0)
    strong = R @ np.diff(lam, prepend=0.0)
    averaged = R @ (lam / n)
    return weak, strong, averaged


def embedding_check(
    X: npt.ArrayLike, Y: DkkSpace, constants: LemmaConstants | None = None
) -> EmbeddingCheck:
    """||f||_{d_1^inf(w)} <= (1 + C_sigma)||f||_Y <= (1 + C_sigma)(3 + C_sigma nu)||f||_{d_1(w')}."""
    consts = constants or lemma_constants(Y)
    batch = _rows(X, Y.dim)
    weak, strong, averaged = weight_norms(batch, Y.space, Y.dim)
    gauge = Y.norms(batch)
    c_sigma = Y.partition.c_sigma
    upper_factor = 3.0 + c_sigma * consts.scales.nu
    dini = None
    if consts.lrp.holds:
        dini = InequalityCheck("embedding.dini", gauge, upper_factor * consts.c_d * strong)
    return EmbeddingCheck(
        lower=InequalityCheck("embedding.lower", weak, (1.0 + c_sigma) * gauge),
        upper=InequalityCheck("embedding.upper", gauge, upper_factor * averaged),
        dini=dini,
    )


def commuting_check(X: npt.ArrayLike, positions: Sequence[int], Y: DkkSpace) -> InequalityCheck:
    """v_n*(S_B f) = v_n*(f) 1_A(n) and S_B Q f = Q S_B f, for B the union of the blocks A."""
    blocks = Y.partition.blocks_of(positions)
    batch = _rows(X, Y.dim)
    restricted = _select(batch, Y.partition.block_union(blocks))
    selector = np.zeros(Y.horizon)
    selector[blocks] = 1.0

    left = np.hstack(
        [
            Y.v_coeff_rows(restricted),
            _select(q_rows(batch, Y.partition), Y.partition.block_union(blocks)),
        ]
    )
    right = np.hstack([Y.v_coeff_rows(batch) * selector, q_rows(restricted, Y.partition)])
    return identity_check("commuting", left, right, _sup(batch) * Y.partition.sizes.max())


def partial_sum_identity_check(X: npt.ArrayLike, r: int, Y: DkkSpace) -> InequalityCheck:
    """H(S_(M_r) f) = (S_(M_r) Q f, S_r v*(f)) for r blocks."""
    if not 1 <= r <= Y.horizon:
        raise DomainError(f"r must be in [1, {Y.horizon}], got {r}", code=ErrorCode.INDEX_OUT_OF_RANGE)
    batch = _rows(X, Y.dim)
    head = np.arange(int(Y.partition.partial_sums[r - 1]))
    truncated = _select(batch, head)
    coeffs = Y.v_coeff_rows(batch)
    coeffs[:, r:] = 0.0
    left = np.hstack([q_rows(truncated, Y.partition), Y.v_coeff_rows(truncated)])
    right = np.hstack([_select(q_rows(batch, Y.partition), head), coeffs])
    return identity_check("partial_sum_identity", left, right, _sup(batch) * Y.partition.sizes.max())


def round_trip_check(X: npt.ArrayLike, Y: DkkSpace) -> InequalityCheck:
    """G(H(f)) = f."""
    batch = _rows(X, Y.dim)
    rebuilt = np.vstack([Y.g_map(*Y.h_map(row)) for row in batch])
    return identity_check("round_trip.gh", rebuilt, batch, _sup(batch) * Y.partition.sizes.max())


def inverse_round_trip_check(
    G: npt.ArrayLike, H: npt.ArrayLike, Y: DkkSpace
) -> InequalityCheck:
    """H(G(g, h)) = (g, h) for rows g in the range of Q and block coefficients h."""
    gs = _rows(G, Y.dim)
    hs = fit_batch(as_batch(H), Y.horizon)
    left, right = [], []
    for g, h in zip(gs, hs, strict=True):
        q, coeffs = Y.h_map(Y.g_map(g, h))
        left.append(np.concatenate([q, coeffs]))
        right.append(np.concatenate([g, h]))
    scale = np.maximum(_sup(gs), _sup(hs)) * Y.partition.sizes.max()
    return identity_check("round_trip.hg", np.vstack(left), np.vstack(right), scale)


@dataclass(frozen=True)
class TailProjectionCheck:
    """The tail-projection bound and its supporting per-vector inequalities."""

    r: int | None
    subset: tuple[int, ...]
    c_a: float
    checks: dict[str, InequalityCheck] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    @property
    def main(self) -> InequalityCheck:
        return self.checks["tail_projection"]

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "size": len(self.subset),
            "c_a": self.c_a,
            "checks": {k: v.to_dict() for k, v in self.checks.items()},
        }


def tail_block(subset: Sequence[int], Y: DkkSpace) -> int | None:
    """The 1-based r with min(A) in sigma_r, after checking |A| <= M_r."""
    chosen = sorted(set(int(j) for j in subset))
    if not chosen:
        return None
    if chosen[0] < 0 or chosen[-1] >= Y.dim:
        raise HypothesisError(
            "range",
            f"A must lie in [0, {Y.dim})",
            context=ErrorContext(operation="tail_projection_check"),
        )
    r = Y.partition.block_of(chosen[0]) + 1
    limit = int(Y.partition.partial_sums[r - 1])
    if len(chosen) > limit:
        raise HypothesisError(
            "cardinality",
            f"|A| = {len(chosen)} exceeds M_{r} = {limit}",
            context=ErrorContext(
                operation="tail_projection_check",
                parameters={"r": r, "size": len(chosen), "M_r": limit},
            ),
        )
    return r


def tail_projection_check(
    X: npt.ArrayLike,
    subset: Sequence[int],
    Y: DkkSpace,
    constants: LemmaConstants | None = None,
) -> TailProjectionCheck:
    """||S_A f||_Y <= C_a ||f||_Y for A inside the blocks from r on with |A| <= M_r.

    Also checks, block by block on A_n = A cap sigma_n,
    |v_n*(S_(A_n) f)| <= 2 Lambda*_|A_n| / Lambda*_|sigma_n| ||S_(sigma_n) f||_S,
    the l_1 refinement of it when S = l_1, and
    ||Q S_A f||_S <= 5||Q f||_S + 2 sum_n Lambda_|A_n| / Lambda_|sigma_n| |v_n*(f)|.
    """
    consts = constants or lemma_constants(Y)
    if consts.c_a is None:
        raise HypothesisError(
            "regularity",
            "Lambda must have both regularity properties unless S = l_1",
            context=ErrorContext(operation="tail_projection_check", parameters={"notes": consts.notes}),
        )
    r = tail_block(subset, Y)
    chosen = tuple(sorted(set(int(j) for j in subset)))
    batch = _rows(X, Y.dim)
    S, part = Y.space, Y.partition
    gauge = Y.norms(batch)
    projected = _select(batch, chosen)

    checks = {
        "tail_projection": InequalityCheck("tail_projection", Y.norms(projected), consts.c_a * gauge)
    }
    if not chosen:
        return TailProjectionCheck(r=r, subset=chosen, c_a=consts.c_a, checks=checks)

    counts = np.bincount(part.labels[list(chosen)], minlength=Y.horizon)
    touched = np.flatnonzero(counts)
    lam_sizes = Y.block_lambdas
    lam_star_sizes = Y.block_lambda_stars
    lam_counts = np.zeros(Y.horizon)
    lam_counts[touched] = S.lambdas(counts[touched])
    lam_star_counts = np.zeros(Y.horizon)
    lam_star_counts[touched] = counts[touched] / lam_counts[touched]

    coeffs = Y.v_coeff_rows(batch)
    projected_coeffs = Y.v_coeff_rows(projected)
    block_parts = []
    for n in touched:
        block_parts.append(S.norms(_select(batch, part.block(int(n)))))
    block_norms = np.column_stack(block_parts)

    lhs = np.abs(projected_coeffs[:, touched])
    rhs = 2.0 * (lam_star_counts[touched] / lam_star_sizes[touched]) * block_norms
    checks["block_coefficient"] = InequalityCheck("block_coefficient", lhs.ravel(), rhs.ravel())

    if Y.is_l1:
        means = block_sums(batch, part) / part.sizes
        spread = np.add.reduceat(np.abs(batch - np.repeat(means, part.sizes, axis=1)), part.offsets, axis=1)
        rhs_l1 = (counts[touched] / part.sizes[touched]) * np.abs(coeffs[:, touched]) + spread[:, touched]
        checks["block_coefficient_l1"] = InequalityCheck("block_coefficient_l1", lhs.ravel(), rhs_l1.ravel())

    q_projected = S.norms(q_rows(projected, part))
    weighted = (np.abs(coeffs) * (lam_counts / lam_sizes)).sum(axis=1)
    checks["q_projection"] = InequalityCheck(
        "q_projection", q_projected, 5.0 * S.norms(q_rows(batch, part)) + 2.0 * weighted
    )
    return TailProjectionCheck(r=r, subset=chosen, c_a=consts.c_a, checks=checks)
