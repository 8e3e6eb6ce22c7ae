"""
Dual norms of functionals on subsymmetric spaces.

Closed forms are used for l_p (Hoelder) and for Lorentz d_1(w) with a
non-increasing weight, whose unit ball is the convex hull of normalized
signed indicators. Elsewhere the value is a certified lower bound: the
best of flat indicators, power-shaped vectors aligned with g, and seeded
coordinate-ascent restarts.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from dkk_lab.error import DomainError, ErrorCode
from dkk_lab.search import coordinate_ascent
from dkk_lab.seqspace.sequences import FiniteSequence, as_sequence
from dkk_lab.seqspace.spaces import LorentzSpace, LpSpace, SequenceSpace, lp

POWER_SHAPES = (0.25, 0.5, 1.0, 1.5, 2.0, 3.0)


@dataclass(frozen=True)
class DualBound:
    """Lower bound (or exact value) of sup{<f,g> : ||f|| <= 1} with a certifying f."""

    value: float
    exact: bool
    witness: FiniteSequence

    def recheck(self, space: SequenceSpace, g: npt.ArrayLike) -> float:
        """Pairing of the witness with g divided by the witness norm."""
        gg = as_sequence(g)
        denom = space.norm(self.witness)
        return float(self.witness @ gg) / denom if denom > 0 else 0.0


def _flat_candidates(space: SequenceSpace, g: FiniteSequence) -> tuple[float, FiniteSequence]:
    order = np.argsort(-np.abs(g), kind="stable")
    # past supp g the partial sums are flat and Lambda is non-decreasing
    width = int(np.count_nonzero(g))
    sorted_abs = np.abs(g)[order][:width]
    k = np.arange(1, width + 1)
    values = np.cumsum(sorted_abs) / space.lambdas(k)
    best_k = int(np.argmax(values)) + 1
    f = np.zeros_like(g)
    chosen = order[:best_k]
    f[chosen] = np.sign(g[chosen])
    f[chosen[f[chosen] == 0.0]] = 1.0
    return float(values[best_k - 1]), f


def _ratio(space: SequenceSpace, g: FiniteSequence, f: FiniteSequence) -> float:
    denom = space.norm(f)
    return float(f @ g) / denom if denom > 0.0 else 0.0


def _lp_dual(space: LpSpace, g: FiniteSequence) -> DualBound:
    value = lp(space.conjugate).norm(g)
    if space.p == 1.0:
        f = np.zeros_like(g)
        k = int(np.argmax(np.abs(g)))
        f[k] = 1.0 if g[k] >= 0 else -1.0
    elif math.isinf(space.p):
        f = np.where(g >= 0.0, 1.0, -1.0)
    else:
        f = np.sign(g) * np.abs(g) ** (space.conjugate - 1.0)
    return DualBound(value=value, exact=True, witness=f)


def dual_norm_lb(
    space: SequenceSpace,
    g: npt.ArrayLike,
    budget: int = 8,
    seed: int = 0,
    sweeps: int = 50,
) -> DualBound:
    """Dual norm of the functional g, exact where a closed form exists.

    ``budget`` is the number of random ascent restarts; zero keeps the
    flat-indicator bound.
    """
    if not space.subsymmetric:
        raise DomainError(
            f"Dual norm estimation needs a subsymmetric space, got {space.label}",
            code=ErrorCode.NOT_SUBSYMMETRIC,
        )
    gg = as_sequence(g)
    if not np.any(gg):
        return DualBound(value=0.0, exact=True, witness=np.zeros_like(gg))

    if isinstance(space, LpSpace):
        return _lp_dual(space, gg)

    value, best_f = _flat_candidates(space, gg)
    if isinstance(space, LorentzSpace) and space.q == 1.0:
        return DualBound(value=value, exact=True, witness=best_f)
    if budget == 0:
        return DualBound(value=value, exact=False, witness=best_f)

    for t in POWER_SHAPES:
        f = np.sign(gg) * np.abs(gg) ** t
        r = _ratio(space, gg, f)
        if r > value:
            value, best_f = r, f

    rng = np.random.default_rng(seed)
    support = [int(j) for j in np.flatnonzero(gg)]
    for restart in range(budget):
        start = np.sign(gg) * rng.uniform(0.0, 1.0, size=gg.size)
        x, r = coordinate_ascent(
            lambda f: _ratio(space, gg, f), start, sweeps=sweeps, coords=support
        )
        if r > value:
            value, best_f = r, x
            logger.debug("Dual ascent improved", restart=restart, value=value)

    # report the witness's own value so a recheck reproduces it exactly
    return DualBound(value=_ratio(space, gg, best_f), exact=False, witness=best_f)


def bidemocracy_product(space: SequenceSpace, m: int, budget: int = 0, seed: int = 0) -> DualBound:
    """Lambda_m times the dual norm of the indicator functional of m coordinates."""
    ones = np.ones(m)
    dual = dual_norm_lb(space, ones, budget=budget, seed=seed)
    lam = float(space.lambdas([m])[0])
    return DualBound(value=lam * dual.value, exact=dual.exact, witness=dual.witness)
