"""
Finite-horizon constants behind the tail-projection bound and the
quasi-greedy estimate of a DKK space.

C1, C2 are built from Lambda* = m / Lambda_m, C3, C4 from Lambda, both over
the first ``horizon`` blocks. C_a and the embedding constants are scaled by
nu = max||x_n||, mu = min||x_n|| and kappa = max||x_n*|| of the seed basis,
which are all 1 for normalized bimonotone bases.
"""

from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
import numpy.typing as npt
from loguru import logger

from dkk_lab.bases import BasisRep, block_repeat
from dkk_lab.dkk.partition import Partition
from dkk_lab.dkk.space import DkkSpace
from dkk_lab.error import DomainError, ErrorCode, ErrorContext, HypothesisError
from dkk_lab.seqspace import (
    RegularityVerdict,
    SequenceSpace,
    check_lrp,
    check_urp,
    dini_constant,
)

Branch = Literal["lrp_urp", "l1", "inapplicable"]


@dataclass(frozen=True)
class BasisScales:
    nu: float
    mu: float
    kappa: float | None

    def to_dict(self) -> dict[str, Any]:
        return {"nu": self.nu, "mu": self.mu, "kappa": self.kappa}


def basis_scales(space: DkkSpace) -> BasisScales:
    trunc = space.coefficient_basis
    norms = trunc.norm_x()
    functionals = trunc.coordinate_functional_norms()
    return BasisScales(
        nu=float(norms.max()),
        mu=float(norms.min()),
        kappa=None if functionals is None else float(functionals.max()),
    )


def _ratio_constants(values: npt.NDArray[np.float64], at_partial: npt.NDArray[np.float64]) -> tuple[float, float]:
    """(max_r g(M_r)/g(|sigma_r|), max_r sum_(n>=r) g(|sigma_r|)/g(|sigma_n|))."""
    first = float(np.max(at_partial / values))
    tails = np.cumsum((1.0 / values)[::-1])[::-1]
    second = float(np.max(values * tails))
    return first, second


@dataclass(frozen=True)
class LemmaConstants:
    """Constants assembled at a finite horizon."""

    horizon: int
    c1: float
    c2: float
    c3: float
    c4: float
    c_sigma: float
    c_d: float
    scales: BasisScales
    lrp: RegularityVerdict
    urp: RegularityVerdict
    branch: Branch
    c_a: float | None
    c_low: float
    c_up: float
    notes: list[str] = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.c_a is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "horizon": self.horizon,
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "c4": self.c4,
            "c_sigma": self.c_sigma,
            "c_d": self.c_d,
            "scales": self.scales.to_dict(),
            "lrp": self.lrp.to_dict(),
            "urp": self.urp.to_dict(),
            "branch": self.branch,
            "c_a": self.c_a,
            "c_low": self.c_low,
            "c_up": self.c_up,
            "notes": list(self.notes),
        }


def lemma_constants(space: DkkSpace, horizon: int | None = None) -> LemmaConstants:
    """C1..C4, C_a and the embedding constants of ``space`` over ``horizon`` blocks."""
    R = space.horizon if horizon is None else horizon
    if not 1 <= R <= space.horizon:
        raise DomainError(
            f"Horizon must be in [1, {space.horizon}], got {R}",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    partition = Partition(space.partition.block_sizes[:R])
    S: SequenceSpace = space.space
    sizes = partition.sizes
    partial = partition.partial_sums

    lam_sizes = S.lambdas(sizes)
    lam_partial = S.lambdas(partial)
    c1, c2 = _ratio_constants(sizes / lam_sizes, partial / lam_partial)
    c3, c4 = _ratio_constants(lam_sizes, lam_partial)

    m_max = partition.total
    lrp = check_lrp(S, m_max=m_max)
    urp = check_urp(S, m_max=m_max)
    c_d = dini_constant(S, m_max=m_max)
    scales = basis_scales(space)
    c_sigma = partition.c_sigma

    notes: list[str] = []
    branch: Branch
    c_a: float | None = None
    if scales.kappa is None:
        branch = "inapplicable"
        notes.append("coordinate functional norms of the seed basis are not available")
    elif space.is_l1:
        branch = "l1"
        c_a = max(5.0 + scales.nu, (2.0 + scales.nu) * c3 * c4 * scales.kappa)
    elif lrp.holds and urp.holds:
        branch = "lrp_urp"
        nu, mu, kappa = scales.nu, scales.mu, scales.kappa
        c_a = 2.0 * c1 * c2 * nu * max(1.0, nu * kappa) / min(1.0, mu) + max(
            5.0, 2.0 * c3 * c4 * kappa
        )
    else:
        branch = "inapplicable"
        failed = [v.prop for v in (lrp, urp) if not v.holds]
        notes.append(f"{' and '.join(failed)} fails up to m = {m_max}")

    kappa_scale = 1.0 if scales.kappa is None else max(1.0, scales.kappa)
    constants = LemmaConstants(
        horizon=R,
        c1=c1,
        c2=c2,
        c3=c3,
        c4=c4,
        c_sigma=c_sigma,
        c_d=c_d,
        scales=scales,
        lrp=lrp,
        urp=urp,
        branch=branch,
        c_a=c_a,
        c_low=(1.0 + c_sigma) * kappa_scale,
        c_up=(3.0 + c_sigma * scales.nu) * c_d,
        notes=notes,
    )
    logger.debug("Lemma constants", space=space.label, branch=branch, c_a=c_a)
    return constants


def quasi_greedy_constant(constants: LemmaConstants, c_b: float) -> float:
    """C_b + C_a + C_low * C_up."""
    if constants.c_a is None:
        raise HypothesisError(
            "regularity",
            "The tail-projection constant is not available for this space",
            context=ErrorContext(operation="quasi_greedy_constant", parameters={"notes": constants.notes}),
        )
    return c_b + constants.c_a + constants.c_low * constants.c_up


def dkk_of_repeated(
    b0: BasisRep, space: SequenceSpace, horizon: int, p: float = 1.0
) -> DkkSpace:
    """DKK space over copies of B0 truncated to 1, 3, 7, ..., 2^horizon - 1 coordinates."""
    sizes = [(1 << n) - 1 for n in range(1, horizon + 1)]
    return DkkSpace(
        basis=block_repeat(b0, sizes, p=p),
        space=space,
        partition=Partition.dyadic(horizon),
    )
