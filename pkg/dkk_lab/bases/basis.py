"""
Basis representations.

A basis is given by how its finite coefficient vectors land in ambient
coordinates: column j of the truncation matrix holds the ambient coordinates
of x_j. Norms are ambient norms of images, coordinate projections act on
coefficients.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
import numpy.typing as npt

from dkk_lab.bases.ambient import AmbientNorm
from dkk_lab.error import DomainError, ErrorCode, InternalError
from dkk_lab.seqspace import ExactKind, as_batch, fit_batch, fit_length

MatrixFn = Callable[[int], npt.NDArray[np.float64]]
AmbientFn = Callable[[int], AmbientNorm]
FunctionalFn = Callable[[int], npt.NDArray[np.float64]]


@dataclass(frozen=True)
class BasisTruncation:
    """A basis restricted to its first ``dim`` vectors."""

    name: str
    dim: int
    matrix: npt.NDArray[np.float64]
    ambient: AmbientNorm
    unconditional: bool = False
    functional_norms: npt.NDArray[np.float64] | None = None

    subsymmetric = False

    @property
    def exact_kind(self) -> ExactKind | None:
        """Exact operator-norm family, available for square truncations only."""
        if self.matrix.shape[0] != self.matrix.shape[1]:
            return None
        return self.ambient.exact_kind

    @property
    def label(self) -> str:
        return f"{self.name}[{self.dim}]"

    @cached_property
    def inverse(self) -> npt.NDArray[np.float64]:
        """Ambient coordinates back to coefficients."""
        M = self.matrix
        if M.shape[0] != M.shape[1]:
            raise InternalError(f"Truncation of {self.name} is not square")
        if M.shape[0] == 0:
            return M.copy()
        cond = np.linalg.cond(M)
        if not np.isfinite(cond) or cond > 1e12:
            raise InternalError(
                f"Truncation matrix of {self.name} at dim {self.dim} is singular",
                code=ErrorCode.SINGULAR_TRUNCATION,
            )
        return np.linalg.inv(M)

    def to_ambient(self, coeffs: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.matrix @ fit_length(coeffs, self.dim)

    def norms(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]:
        batch = fit_batch(X, self.dim)
        return self.ambient.norms(batch @ self.matrix.T)

    def norm(self, coeffs: npt.ArrayLike) -> float:
        return float(self.norms(as_batch(coeffs))[0])

    def norm_x(self) -> npt.NDArray[np.float64]:
        """||x_j|| for j < dim."""
        return self.ambient.norms(self.matrix.T)

    def coordinate_functional_norms(self) -> npt.NDArray[np.float64] | None:
        """||x_k*|| for k < dim when exactly computable, else None."""
        if self.functional_norms is not None:
            if np.isnan(self.functional_norms).any():
                return None
            return self.functional_norms
        kind = self.exact_kind
        if kind is None:
            return None
        rows = self.inverse
        if kind == "l1":
            return np.abs(rows).max(axis=1)
        if kind == "linf":
            return np.abs(rows).sum(axis=1)
        return np.sqrt((rows * rows).sum(axis=1))


@dataclass(frozen=True)
class BasisRep:
    """A named basis: coefficients -> ambient coordinates plus an ambient norm."""

    name: str
    matrix_fn: MatrixFn
    ambient_fn: AmbientFn
    dim_hint: int | None = None
    unconditional: bool = False
    functional_fn: FunctionalFn | None = None

    def truncate(self, dim: int) -> BasisTruncation:
        if dim < 0:
            raise DomainError(f"Dimension must be non-negative, got {dim}")
        if self.dim_hint is not None and dim > self.dim_hint:
            raise DomainError(
                f"Basis {self.name} is configured for at most {self.dim_hint} coefficients",
                code=ErrorCode.INDEX_OUT_OF_RANGE,
            )
        return _truncation(self, dim)

    def to_ambient(self, coeffs: npt.ArrayLike) -> npt.NDArray[np.float64]:
        arr = np.trim_zeros(np.asarray(coeffs, dtype=np.float64), "b")
        return self.truncate(arr.size).to_ambient(arr)

    def norm(self, coeffs: npt.ArrayLike) -> float:
        arr = np.trim_zeros(np.asarray(coeffs, dtype=np.float64), "b")
        return self.truncate(arr.size).norm(arr)

    def norm_x(self, dim: int) -> npt.NDArray[np.float64]:
        return self.truncate(dim).norm_x()


@lru_cache(maxsize=32)
def _truncation(rep: BasisRep, dim: int) -> BasisTruncation:
    """Truncations keyed by the frozen rep and the dimension."""
    return BasisTruncation(
        name=rep.name,
        dim=dim,
        matrix=np.asarray(rep.matrix_fn(dim), dtype=np.float64),
        ambient=rep.ambient_fn(dim),
        unconditional=rep.unconditional,
        functional_norms=None if rep.functional_fn is None else rep.functional_fn(dim),
    )


def project(f: npt.ArrayLike, subset: Iterable[int]) -> npt.NDArray[np.float64]:
    """Coordinate projection S_A on coefficients."""
    arr = np.asarray(f, dtype=np.float64)
    out = np.zeros_like(arr)
    idx = np.fromiter(subset, dtype=np.intp)
    idx = idx[idx < arr.size]
    out[idx] = arr[idx]
    return out
