"""
Greedy sets of the thresholding greedy algorithm.

Coefficients are ranked by decreasing magnitude with ties going to the
smaller index; F_m is the set of the first m ranked positions.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, Protocol, runtime_checkable

import numpy as np
import numpy.typing as npt

from dkk_lab.error import BudgetError, DomainError, ErrorCode
from dkk_lab.seqspace import FiniteSequence, as_sequence

# Admissible greedy sets enumerated per (f, m) before giving up.
MAX_ADMISSIBLE_SETS = 4096


@runtime_checkable
class Normer(Protocol):
    """Anything that evaluates a norm on the rows of a batch."""

    def norms(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]: ...


def greedy_order(f: npt.ArrayLike) -> npt.NDArray[np.intp]:
    """Support positions by decreasing |a_j|, smaller index first on ties."""
    arr = as_sequence(f)
    order = np.argsort(-np.abs(arr), kind="stable")
    return order[: np.count_nonzero(arr)]


def greedy_set(f: npt.ArrayLike, m: int) -> tuple[int, ...]:
    """The m largest coefficients; the whole support when m exceeds it."""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}", code=ErrorCode.INDEX_OUT_OF_RANGE)
    return tuple(sorted(int(j) for j in greedy_order(f)[:m]))


def is_greedy_set(f: npt.ArrayLike, subset: tuple[int, ...] | list[int]) -> bool:
    """|a_j| <= |a_k| for every j outside and k inside the set."""
    mags = np.abs(as_sequence(f))
    inside = np.zeros(mags.size, dtype=bool)
    inside[list(subset)] = True
    if not inside.any() or inside.all():
        return True
    return bool(mags[~inside].max() <= mags[inside].min())


def admissible_greedy_sets(f: npt.ArrayLike, m: int) -> list[tuple[int, ...]]:
    """Every greedy set of size m, for any tie-break."""
    arr = as_sequence(f)
    mags = np.abs(arr)
    support_size = int(np.count_nonzero(arr))
    if m > support_size:
        raise DomainError(
            f"m = {m} exceeds the support size {support_size}",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    if m == 0:
        return [()]
    threshold = np.sort(mags)[::-1][m - 1]
    forced = np.flatnonzero(mags > threshold)
    tied = np.flatnonzero(mags == threshold)
    need = m - forced.size

    count = comb(tied.size, need)
    if count > MAX_ADMISSIBLE_SETS:
        raise BudgetError(
            f"{count} admissible greedy sets for m = {m}",
            limit=MAX_ADMISSIBLE_SETS,
            requested=count,
        )
    return [
        tuple(sorted([*(int(j) for j in forced), *(int(j) for j in extra)]))
        for extra in combinations(tied, need)
    ]


@dataclass(frozen=True)
class GreedyTrace:
    """Greedy ordering of f with the sets F_m and the errors ||f - S_(F_m) f||."""

    f: FiniteSequence
    ordering: tuple[int, ...]
    errors: tuple[float, ...]

    @property
    def sets(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(self.ordering[:m])) for m in range(len(self.ordering) + 1)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "f": self.f.tolist(),
            "ordering": list(self.ordering),
            "errors": list(self.errors),
        }


def greedy_residuals(f: FiniteSequence, order: npt.NDArray[np.intp]) -> npt.NDArray[np.float64]:
    """Rows f - S_(F_m) f for m = 0 .. len(order)."""
    k = order.size
    rows = np.tile(f, (k + 1, 1))
    # row m drops the first m ranked positions
    dropped = np.tril(np.ones((k + 1, k), dtype=bool), k=-1)
    rows[:, order] = np.where(dropped, 0.0, rows[:, order])
    return rows


def greedy_trace(f: npt.ArrayLike, normer: Normer) -> GreedyTrace:
    arr = as_sequence(f)
    order = greedy_order(arr)
    errors = normer.norms(greedy_residuals(arr, order))
    return GreedyTrace(
        f=arr,
        ordering=tuple(int(j) for j in order),
        errors=tuple(float(e) for e in errors),
    )
