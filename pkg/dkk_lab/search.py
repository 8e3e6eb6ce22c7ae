"""
Search primitives shared by the estimators: coordinate-wise ascent with a
bounded golden-section line search, and the subset families tried by the
conditionality searches.
"""

from collections.abc import Callable, Iterator, Sequence
from itertools import combinations
from math import comb

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize_scalar

from dkk_lab.error import BudgetError, ErrorCode

Objective = Callable[[npt.NDArray[np.float64]], float]

# Hard ceiling on materialized subset masks.
MAX_ENUMERATED_SUBSETS = 1 << 20


def coordinate_ascent(
    objective: Objective,
    x0: npt.NDArray[np.float64],
    sweeps: int = 200,
    coords: Sequence[int] | None = None,
    tol: float = 1e-12,
) -> tuple[npt.NDArray[np.float64], float]:
    """Maximize a scale-invariant objective one coordinate at a time.

    Each coordinate step is a bounded scalar search on an interval of twice
    the current sup-norm around the current value. Iterates are rescaled to
    unit sup-norm after every sweep.
    """
    x = np.array(x0, dtype=np.float64)
    best = objective(x)
    active = range(x.size) if coords is None else coords

    for _ in range(sweeps):
        start = best
        for j in active:
            scale = float(np.max(np.abs(x))) or 1.0
            center = float(x[j])

            def negated(t: float, j: int = j) -> float:
                y = x.copy()
                y[j] = t
                return -objective(y)

            res = minimize_scalar(
                negated,
                bounds=(center - 2.0 * scale, center + 2.0 * scale),
                method="bounded",
                options={"xatol": 1e-10 * scale},
            )
            if -res.fun > best:
                x[j] = res.x
                best = -float(res.fun)

        peak = float(np.max(np.abs(x)))
        if peak > 0.0:
            x /= peak
            best = objective(x)
        if best - start <= tol * max(1.0, abs(best)):
            break

    return x, best


def interval_sets(m: int) -> Iterator[tuple[int, ...]]:
    """Every nonempty interval of range(m), shortest first."""
    for length in range(1, m + 1):
        for start in range(0, m - length + 1):
            yield tuple(range(start, start + length))


def alternating_set(m: int) -> tuple[int, ...]:
    """Positions 0, 2, 4, ... below m."""
    return tuple(range(0, m, 2))


def complement(subset: Sequence[int], m: int) -> tuple[int, ...]:
    chosen = set(subset)
    return tuple(j for j in range(m) if j not in chosen)


def random_subsets(
    rng: np.random.Generator,
    m: int,
    count: int,
    max_size: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Seeded random nonempty subsets of range(m), sizes uniform in [1, max_size]."""
    top = m if max_size is None else min(max_size, m)
    for _ in range(count):
        size = int(rng.integers(1, top + 1))
        yield tuple(sorted(int(j) for j in rng.choice(m, size=size, replace=False)))


def structured_subsets(m: int, max_size: int | None = None) -> list[tuple[int, ...]]:
    """Intervals, the alternating set and its complement, without duplicates."""
    limit = m if max_size is None else max_size
    seen: dict[tuple[int, ...], None] = {}
    for subset in interval_sets(m):
        if len(subset) <= limit:
            seen.setdefault(subset, None)
    alt = alternating_set(m)
    for subset in (alt, complement(alt, m)):
        if subset and len(subset) <= limit:
            seen.setdefault(subset, None)
        elif subset:
            seen.setdefault(subset[:limit], None)
    return list(seen)


def all_subset_masks(m: int) -> npt.NDArray[np.bool_]:
    """Boolean masks of every subset of range(m), in binary counting order."""
    total = 1 << m
    if total > MAX_ENUMERATED_SUBSETS:
        raise BudgetError(
            f"Enumerating all subsets of {m} coordinates exceeds the cap",
            limit=MAX_ENUMERATED_SUBSETS,
            requested=total,
        )
    codes = np.arange(total, dtype=np.int64)[:, None]
    return ((codes >> np.arange(m, dtype=np.int64)[None, :]) & 1).astype(bool)


def count_small_subsets(dim: int, max_size: int) -> int:
    return sum(comb(dim, k) for k in range(0, max_size + 1))


def small_subset_masks(dim: int, max_size: int) -> npt.NDArray[np.bool_]:
    """Masks of every subset of range(dim) with at most ``max_size`` elements."""
    total = count_small_subsets(dim, max_size)
    if total > MAX_ENUMERATED_SUBSETS:
        raise BudgetError(
            f"Enumerating subsets of size <= {max_size} among {dim} coordinates exceeds the cap",
            limit=MAX_ENUMERATED_SUBSETS,
            requested=total,
            code=ErrorCode.DIMENSION_CAP_EXCEEDED,
        )
    masks = np.zeros((total, dim), dtype=bool)
    row = 0
    for size in range(0, max_size + 1):
        for subset in combinations(range(dim), size):
            masks[row, list(subset)] = True
            row += 1
    return masks
