"""
Least-squares growth fits of constant tables against (log m)^a, and the
growth condition of repeated-copy bases.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from dkk_lab.bases import growth_table
from dkk_lab.error import ErrorCode, FitError

MIN_POINTS = 3


@dataclass(frozen=True)
class GrowthFit:
    """value ~ slope * (log_base m)^power + intercept; residual is the sum of squared errors."""

    slope: float
    intercept: float
    residual: float
    power: float
    base: float
    points: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "power": self.power,
            "base": self.base,
            "points": self.points,
        }


def log_growth_fit(
    points: Sequence[tuple[float, float]],
    power: float = 1.0,
    base: float = math.e,
) -> GrowthFit:
    """Fit (m, value) pairs; m must be >= 1."""
    if len(points) < MIN_POINTS:
        raise FitError(
            f"A growth fit needs at least {MIN_POINTS} points, got {len(points)}",
            code=ErrorCode.TOO_FEW_POINTS,
        )
    m = np.asarray([p[0] for p in points], dtype=np.float64)
    y = np.asarray([p[1] for p in points], dtype=np.float64)
    if np.any(m < 1.0):
        raise FitError("Growth fits need m >= 1", code=ErrorCode.DEGENERATE_ABSCISSAS)
    x = (np.log(m) / math.log(base)) ** power
    if np.ptp(x) == 0.0:
        raise FitError("All abscissas coincide", code=ErrorCode.DEGENERATE_ABSCISSAS)

    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sum((y - (slope * x + intercept)) ** 2))
    return GrowthFit(
        slope=float(slope),
        intercept=float(intercept),
        residual=residual,
        power=power,
        base=base,
        points=int(m.size),
    )


def growth_check(sizes: Sequence[int]) -> float:
    """sup_r M_r / N_(r+1) for copy sizes N_1, N_2, ...; 0 for a single copy."""
    table = growth_table(sizes)
    return max(table) if table else 0.0
