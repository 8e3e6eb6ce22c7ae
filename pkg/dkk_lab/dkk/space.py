"""
The gauge ||f||_Y = ||Q f||_S + ||sum_n v_n*(f) x_n||_X on a finite partition,
with the block vectors v_n, the functionals v_n* and the maps H and G.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt
from loguru import logger

from dkk_lab.bases import BasisRep, BasisTruncation
from dkk_lab.dkk.averaging import block_sums, q_rows
from dkk_lab.dkk.partition import Partition
from dkk_lab.error import DomainError, ErrorCode
from dkk_lab.seqspace import (
    ExactKind,
    FiniteSequence,
    LpSpace,
    SequenceSpace,
    as_batch,
    fit_batch,
    fit_length,
)

# Block sums of an element of the range of Q vanish up to this relative slack.
RANGE_RTOL = 1e-9


@dataclass(frozen=True)
class DkkSpace:
    """Y[B, S, sigma] truncated to the partitioned range [0, M_R)."""

    basis: BasisRep
    space: SequenceSpace
    partition: Partition

    subsymmetric = False

    def __post_init__(self) -> None:
        if not self.space.subsymmetric:
            raise DomainError(
                f"The DKK gauge needs a subsymmetric space, got {self.space.label}",
                code=ErrorCode.NOT_SUBSYMMETRIC,
            )
        logger.debug(
            "Built DKK space",
            basis=self.basis.name,
            space=self.space.label,
            blocks=self.partition.horizon,
        )

    @property
    def dim(self) -> int:
        return self.partition.total

    @property
    def horizon(self) -> int:
        return self.partition.horizon

    @property
    def label(self) -> str:
        return f"Y[{self.basis.name},{self.space.label},{list(self.partition.block_sizes)}]"

    @property
    def exact_kind(self) -> ExactKind | None:
        return None

    @property
    def is_l1(self) -> bool:
        return isinstance(self.space, LpSpace) and self.space.p == 1.0

    @cached_property
    def block_lambdas(self) -> npt.NDArray[np.float64]:
        """Lambda_|sigma_n| for every block."""
        return self.space.lambdas(self.partition.sizes)

    @cached_property
    def block_lambda_stars(self) -> npt.NDArray[np.float64]:
        return self.partition.sizes / self.block_lambdas

    @cached_property
    def coefficient_basis(self) -> BasisTruncation:
        """The seed basis truncated to one coefficient per block."""
        return self.basis.truncate(self.horizon)

    def v_vector(self, n: int) -> FiniteSequence:
        """v_n: the indicator of block n divided by Lambda_|sigma_n|."""
        out = np.zeros(self.dim)
        out[list(self.partition.block(n))] = 1.0 / self.block_lambdas[n]
        return out

    def v_coeff_rows(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """v_n*(f) for every row and block: (Lambda_|sigma_n| / |sigma_n|) times the block sum."""
        return block_sums(X, self.partition) * (self.block_lambdas / self.partition.sizes)

    def v_coeffs(self, f: npt.ArrayLike) -> FiniteSequence:
        return self.v_coeff_rows(fit_length(f, self.dim))[0]

    def reconstruct_rows(self, H: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """sum_n h_n v_n for every row of block coefficients."""
        coeffs = fit_batch(as_batch(H), self.horizon)
        return np.repeat(coeffs / self.block_lambdas, self.partition.sizes, axis=1)

    def lift_block_coefficients(self, a: npt.ArrayLike) -> FiniteSequence:
        """b_j = a_n / Lambda_|sigma_n| on sigma_n; Q kills it and v_n* returns a_n."""
        return self.reconstruct_rows(fit_length(a, self.horizon))[0]

    def parts(self, X: npt.ArrayLike) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        """(||Q f||_S, ||sum v_n*(f) x_n||_X) for every row."""
        batch = fit_batch(as_batch(X), self.dim)
        q_part = self.space.norms(q_rows(batch, self.partition))
        x_part = self.coefficient_basis.norms(self.v_coeff_rows(batch))
        return q_part, x_part

    def norms(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]:
        q_part, x_part = self.parts(X)
        return q_part + x_part

    def norm(self, f: npt.ArrayLike) -> float:
        return float(self.norms(as_batch(f))[0])

    def h_map(self, f: npt.ArrayLike) -> tuple[FiniteSequence, FiniteSequence]:
        """H(f) = (Q f, (v_n*(f))_n)."""
        row = fit_length(f, self.dim)
        return q_rows(row, self.partition)[0], self.v_coeff_rows(row)[0]

    def g_map(self, g: npt.ArrayLike, h: npt.ArrayLike) -> FiniteSequence:
        """G(g, h) = g + sum_n h_n v_n for g in the range of Q."""
        row = fit_length(g, self.dim)
        sums = block_sums(row, self.partition)[0]
        scale = RANGE_RTOL * max(1.0, float(np.max(np.abs(row), initial=0.0))) * self.partition.sizes
        if np.any(np.abs(sums) > scale):
            raise DomainError(
                "g is not in the range of Q: some block average is nonzero",
                code=ErrorCode.NOT_IN_RANGE_OF_Q,
                details=f"block sums {sums.tolist()}",
            )
        return row + self.reconstruct_rows(fit_length(h, self.horizon))[0]

    def unit_vector_basis(self) -> BasisRep:
        """The unit-vector system e_j of Y, usable by the conditionality engines."""
        return BasisRep(
            name=f"E[{self.label}]",
            matrix_fn=lambda dim: np.eye(dim),
            ambient_fn=lambda dim: self,
            dim_hint=self.dim,
        )


def dkk_norm(f: npt.ArrayLike, space: DkkSpace) -> float:
    return space.norm(f)


def v_coeffs(f: npt.ArrayLike, space: DkkSpace) -> FiniteSequence:
    return space.v_coeffs(f)


def h_map(f: npt.ArrayLike, space: DkkSpace) -> tuple[FiniteSequence, FiniteSequence]:
    return space.h_map(f)


def g_map(g: npt.ArrayLike, h: npt.ArrayLike, space: DkkSpace) -> FiniteSequence:
    return space.g_map(g, h)
