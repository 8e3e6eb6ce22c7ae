"""
Sampled estimates of greedy-type constants: quasi-greedy ratios with the
partial-sum bound measured on the same samples, the fundamental function,
super-democracy and the exhaustive small-case almost-greedy ratio.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np
import numpy.typing as npt
from loguru import logger

from dkk_lab.condest import Witness
from dkk_lab.dkk import DkkSpace, basis_scales
from dkk_lab.error import BudgetError, DomainError, ErrorCode
from dkk_lab.greedy.greedy import (
    MAX_ADMISSIBLE_SETS,
    Normer,
    admissible_greedy_sets,
    greedy_order,
    greedy_residuals,
    greedy_set,
)
from dkk_lab.sampling import derive_rng, heavy_tailed
from dkk_lab.search import MAX_ENUMERATED_SUBSETS, all_subset_masks, count_small_subsets, small_subset_masks
from dkk_lab.seqspace import as_batch, fit_batch

MAX_SMALLCASE_DIM = 12


def _is_subsymmetric(normer: Normer) -> bool:
    return bool(getattr(normer, "subsymmetric", False)) and hasattr(normer, "lambdas")


@dataclass(frozen=True)
class QuasiGreedyEstimate:
    """Worst sampled ratios; each witness reproduces its ratio."""

    remainder_ratio: float
    projection_ratio: float
    partial_sum_ratio: float
    remainder_witness: Witness | None
    projection_witness: Witness | None
    partial_sum_witness: Witness | None
    samples: int

    def to_dict(self) -> dict[str, Any]:
        def w(x: Witness | None) -> dict[str, Any] | None:
            return x.to_dict() if x else None

        return {
            "remainder_ratio": self.remainder_ratio,
            "projection_ratio": self.projection_ratio,
            "partial_sum_ratio": self.partial_sum_ratio,
            "remainder_witness": w(self.remainder_witness),
            "projection_witness": w(self.projection_witness),
            "partial_sum_witness": w(self.partial_sum_witness),
            "samples": self.samples,
        }


class _Best:
    def __init__(self) -> None:
        self.value = 0.0
        self.witness: Witness | None = None

    def offer(self, value: float, f: npt.NDArray[np.float64], subset: Sequence[int]) -> None:
        if value > self.value or self.witness is None:
            self.value = value
            self.witness = Witness.of(f, subset)


def _sample_rows(dim: int, trials: int, seed: int, samples: npt.ArrayLike | None) -> npt.NDArray[np.float64]:
    rng = derive_rng(seed, "greedy", dim)
    rows = heavy_tailed(rng, trials, dim)
    # equal magnitudes make greedy sets prefixes of the tie-break order
    flat = rng.choice([-1.0, 1.0], size=(max(1, trials // 50), dim))
    parts = [rows, flat]
    if samples is not None:
        parts.insert(0, fit_batch(as_batch(samples), dim))
    return np.vstack(parts)


def _greedy_sets_for(f: npt.NDArray[np.float64], all_ties: bool) -> list[tuple[int, ...]]:
    order = greedy_order(f)
    sets = [tuple(int(j) for j in order[:m]) for m in range(1, order.size + 1)]
    if not all_ties:
        return sets
    out: list[tuple[int, ...]] = []
    for m in range(1, order.size + 1):
        try:
            out.extend(admissible_greedy_sets(f, m))
        except BudgetError:
            logger.debug("Too many tied greedy sets; using the tie-break order", m=m, cap=MAX_ADMISSIBLE_SETS)
            out.append(sets[m - 1])
    return out


def qg_ratio_estimate(
    normer: Normer,
    dim: int,
    trials: int = 1000,
    seed: int = 0,
    samples: npt.ArrayLike | None = None,
    all_ties: bool = False,
) -> QuasiGreedyEstimate:
    """max ||f - S_F f|| / ||f|| and max ||S_F f|| / ||f|| over sampled f and greedy sets F.

    Also measures max_m ||f - S_m f|| / ||f|| over the same samples, the
    finite-horizon partial-sum bound. With ``all_ties`` every tie-admissible
    greedy set is tried, not only the tie-break one.
    """
    rows = _sample_rows(dim, trials, seed, samples)
    remainder, projection, partial = _Best(), _Best(), _Best()
    everything = np.arange(dim)

    for f in rows:
        base = float(normer.norms(f)[0])
        if base == 0.0:
            continue
        if all_ties:
            sets = _greedy_sets_for(f, all_ties=True)
            kept = np.vstack([np.where(np.isin(everything, s), f, 0.0) for s in sets])
            rest = f - kept
        else:
            order = greedy_order(f)
            sets = [tuple(int(j) for j in order[:m]) for m in range(1, order.size + 1)]
            rest = greedy_residuals(f, order)[1:]
            kept = f - rest

        rest_norms = normer.norms(rest) / base
        kept_norms = normer.norms(kept) / base
        i = int(np.argmax(rest_norms))
        remainder.offer(float(rest_norms[i]), f, np.setdiff1d(everything, sets[i]))
        i = int(np.argmax(kept_norms))
        projection.offer(float(kept_norms[i]), f, sets[i])

        if dim > 1:
            tails = np.tile(f, (dim, 1))
            tails[np.tril(np.ones((dim, dim), dtype=bool), k=-1)] = 0.0
            tail_norms = normer.norms(tails[1:]) / base
            i = int(np.argmax(tail_norms))
            partial.offer(float(tail_norms[i]), f, range(i + 1, dim))

    logger.info(
        "Quasi-greedy estimate",
        samples=rows.shape[0],
        remainder=remainder.value,
        projection=projection.value,
        partial_sums=partial.value,
    )
    return QuasiGreedyEstimate(
        remainder_ratio=remainder.value,
        projection_ratio=projection.value,
        partial_sum_ratio=partial.value,
        remainder_witness=remainder.witness,
        projection_witness=projection.witness,
        partial_sum_witness=partial.witness,
        samples=int(rows.shape[0]),
    )


def partial_sum_ratio(normer: Normer, dim: int, trials: int = 1000, seed: int = 0) -> float:
    """max_m ||f - S_m f|| / ||f|| over seeded samples."""
    return qg_ratio_estimate(normer, dim, trials=trials, seed=seed).partial_sum_ratio


@dataclass(frozen=True)
class PhiEstimate:
    """phi_m with the set attaining it and, for DKK spaces, the embedding bracket."""

    m: int
    value: float
    exact: bool
    subset: tuple[int, ...]
    lower: float | None = None
    upper: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "value": self.value,
            "exact": self.exact,
            "subset": list(self.subset),
            "lower": self.lower,
            "upper": self.upper,
        }


def _dkk_bracket(space: DkkSpace, m: int) -> tuple[float, float]:
    """(Lambda_m / (1 + C_sigma), (3 + C_sigma nu) sum_(n<=m) Lambda_n / n)."""
    c_sigma = space.partition.c_sigma
    nu = basis_scales(space).nu
    n = np.arange(1, m + 1)
    lam = space.space.lambdas(n)
    return float(lam[-1] / (1.0 + c_sigma)), float((3.0 + c_sigma * nu) * np.sum(lam / n))


def _candidate_sets(
    normer: Normer, m: int, dim: int, rng: np.random.Generator, budget: int
) -> list[tuple[int, ...]]:
    sets: dict[tuple[int, ...], None] = {}
    for length in range(1, m + 1):
        for start in range(0, dim - length + 1):
            sets.setdefault(tuple(range(start, start + length)), None)
    if isinstance(normer, DkkSpace):
        part = normer.partition
        for first in range(part.horizon):
            for last in range(first, part.horizon):
                union = part.block_union(range(first, last + 1))
                union = union[union < dim][:m]
                if union.size:
                    sets.setdefault(tuple(int(j) for j in union), None)
    for _ in range(budget):
        size = int(rng.integers(1, m + 1))
        sets.setdefault(tuple(sorted(int(j) for j in rng.choice(dim, size=size, replace=False))), None)
    return list(sets)


def _indicator_rows(sets: Sequence[tuple[int, ...]], dim: int) -> npt.NDArray[np.float64]:
    rows = np.zeros((len(sets), dim))
    for i, s in enumerate(sets):
        rows[i, list(s)] = 1.0
    return rows


def fundamental_phi(
    normer: Normer,
    m: int,
    dim: int,
    mode: Literal["exact", "search"] = "search",
    budget: int = 256,
    seed: int = 0,
) -> PhiEstimate:
    """sup over |A| <= m, A within the first ``dim`` positions, of ||1_A||."""
    if not 1 <= m <= dim:
        raise DomainError(f"m = {m} outside [1, {dim}]", code=ErrorCode.INDEX_OUT_OF_RANGE)
    if _is_subsymmetric(normer):
        value = float(normer.lambdas([m])[0])  # type: ignore[attr-defined]
        return PhiEstimate(m=m, value=value, exact=True, subset=tuple(range(m)))

    lower = upper = None
    if isinstance(normer, DkkSpace):
        lower, upper = _dkk_bracket(normer, m)

    if mode == "exact":
        total = count_small_subsets(dim, m)
        if total > MAX_ENUMERATED_SUBSETS:
            raise BudgetError(
                f"Exact phi_m needs {total} subsets",
                limit=MAX_ENUMERATED_SUBSETS,
                requested=total,
                code=ErrorCode.DIMENSION_CAP_EXCEEDED,
            )
        masks = small_subset_masks(dim, m)[1:]
        values = normer.norms(masks.astype(np.float64))
        best = int(np.argmax(values))
        subset = tuple(int(j) for j in np.flatnonzero(masks[best]))
        return PhiEstimate(m=m, value=float(values[best]), exact=True, subset=subset, lower=lower, upper=upper)

    sets = _candidate_sets(normer, m, dim, derive_rng(seed, "phi", m), budget)
    values = normer.norms(_indicator_rows(sets, dim))
    best = int(np.argmax(values))
    return PhiEstimate(m=m, value=float(values[best]), exact=False, subset=sets[best], lower=lower, upper=upper)


@dataclass(frozen=True)
class DemocracyEstimate:
    """max/min of ||sum eps_j e_j|| over sampled |A| = m and signs."""

    m: int
    ratio: float
    exact: bool
    largest: float
    smallest: float
    cap: float | None = None
    largest_row: tuple[float, ...] = ()
    smallest_row: tuple[float, ...] = ()

    @property
    def within_cap(self) -> bool:
        return self.cap is None or self.ratio <= self.cap * (1.0 + 1e-9)

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "ratio": self.ratio,
            "exact": self.exact,
            "largest": self.largest,
            "smallest": self.smallest,
            "cap": self.cap,
            "largest_row": list(self.largest_row),
            "smallest_row": list(self.smallest_row),
        }


def superdemocracy_ratio(
    normer: Normer, m: int, dim: int, budget: int = 256, seed: int = 0
) -> DemocracyEstimate:
    if not 1 <= m <= dim:
        raise DomainError(f"m = {m} outside [1, {dim}]", code=ErrorCode.INDEX_OUT_OF_RANGE)
    if _is_subsymmetric(normer):
        value = float(normer.lambdas([m])[0])  # type: ignore[attr-defined]
        flat = tuple(1.0 if j < m else 0.0 for j in range(dim))
        return DemocracyEstimate(
            m=m, ratio=1.0, exact=True, largest=value, smallest=value, largest_row=flat, smallest_row=flat
        )

    rng = derive_rng(seed, "democracy", m)
    rows = [np.pad(np.ones(m), (0, dim - m))]
    alternating = np.where(np.arange(m) % 2 == 0, 1.0, -1.0)
    rows.append(np.pad(alternating, (0, dim - m)))
    if m == 1:
        rows.extend(np.eye(dim))
    for _ in range(budget):
        row = np.zeros(dim)
        row[rng.choice(dim, size=m, replace=False)] = rng.choice([-1.0, 1.0], size=m)
        rows.append(row)
    batch = np.vstack(rows)
    values = normer.norms(batch)
    hi, lo = int(np.argmax(values)), int(np.argmin(values))
    largest, smallest = float(values[hi]), float(values[lo])

    cap = None
    if isinstance(normer, DkkSpace):
        lower, upper = _dkk_bracket(normer, m)
        cap = upper / lower
    return DemocracyEstimate(
        m=m,
        ratio=largest / smallest,
        exact=False,
        largest=largest,
        smallest=smallest,
        cap=cap,
        largest_row=tuple(float(x) for x in batch[hi]),
        smallest_row=tuple(float(x) for x in batch[lo]),
    )


@dataclass(frozen=True)
class AlmostGreedyEstimate:
    """Worst ratio with the vector, the greedy size m and the best competing set A."""

    ratio: float
    m: int
    witness: tuple[float, ...]
    samples: int
    subset: tuple[int, ...] = ()

    @property
    def greedy_set(self) -> tuple[int, ...]:
        return greedy_set(self.witness, self.m)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ratio": self.ratio,
            "m": self.m,
            "witness": list(self.witness),
            "subset": list(self.subset),
            "samples": self.samples,
        }


def almost_greedy_ratio_smallcase(
    normer: Normer,
    dim: int,
    trials: int = 200,
    seed: int = 0,
    samples: npt.ArrayLike | None = None,
) -> AlmostGreedyEstimate:
    """max over samples and m of ||f - S_(F_m) f|| / min_(|A| <= m) ||f - S_A f||.

    The inner minimum enumerates every A within the first ``dim`` positions.
    Pairs where both sides vanish are skipped.
    """
    if dim > MAX_SMALLCASE_DIM:
        raise BudgetError(
            f"Exhaustive almost-greedy ratio is capped at dim {MAX_SMALLCASE_DIM}",
            limit=MAX_SMALLCASE_DIM,
            requested=dim,
            code=ErrorCode.DIMENSION_CAP_EXCEEDED,
        )
    masks = all_subset_masks(dim)
    sizes = masks.sum(axis=1)
    rows = _sample_rows(dim, trials, seed, samples)

    best, best_m, best_f, best_a = 1.0, 0, rows[0], ()
    for f in rows:
        removed = np.where(masks, 0.0, f)
        values = normer.norms(removed)
        per_size = np.full(dim + 1, np.inf)
        np.minimum.at(per_size, sizes, values)
        best_up_to = np.minimum.accumulate(per_size)

        order = greedy_order(f)
        greedy = normer.norms(greedy_residuals(f, order))
        for m, numerator in enumerate(greedy):
            denominator = best_up_to[m]
            if denominator <= 0.0:
                continue
            ratio = float(numerator / denominator)
            if ratio > best:
                competing = int(np.argmin(np.where(sizes <= m, values, np.inf)))
                best, best_m, best_f = ratio, m, f
                best_a = tuple(int(j) for j in np.flatnonzero(masks[competing]))

    return AlmostGreedyEstimate(
        ratio=best,
        m=best_m,
        witness=tuple(float(x) for x in best_f),
        samples=int(rows.shape[0]),
        subset=best_a,
    )
