"""
Norms of coordinate projections S_A on finite truncations of a basis.

In ambient coordinates S_A is M D_A M^-1, so for l_1, l_2 and l_inf
ambients the operator norm is a matrix norm: largest column sum, largest
singular value, largest row sum. Other ambients get a certified lower bound
from seeded coordinate ascent on ||S_A f|| / ||f||.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt
from loguru import logger

from dkk_lab.bases import BasisRep, BasisTruncation
from dkk_lab.error import DomainError, ErrorCode, InternalError
from dkk_lab.search import coordinate_ascent
from dkk_lab.seqspace import ExactKind

# Masks per batched matrix-norm evaluation.
BATCH = 2048


@dataclass(frozen=True)
class Witness:
    """A vector f and a coefficient set A; ratio = ||S_A f|| / ||f||."""

    f: tuple[float, ...]
    subset: tuple[int, ...]

    @classmethod
    def of(cls, f: npt.ArrayLike, subset: Iterable[int]) -> "Witness":
        return cls(
            f=tuple(float(x) for x in np.asarray(f, dtype=np.float64)),
            subset=tuple(sorted(int(j) for j in subset)),
        )

    @property
    def vector(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.f, dtype=np.float64)

    def projected(self) -> npt.NDArray[np.float64]:
        f = self.vector
        out = np.zeros_like(f)
        idx = np.asarray(self.subset, dtype=np.intp)
        out[idx] = f[idx]
        return out

    def ratio(self, normer: Any) -> float:
        """Re-evaluate on any object exposing ``norms``."""
        values = normer.norms(np.vstack([self.projected(), self.vector]))
        return float(values[0] / values[1]) if values[1] > 0.0 else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {"f": list(self.f), "subset": list(self.subset)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Witness":
        return cls.of(data["f"], data["subset"])


@dataclass(frozen=True)
class ProjNormResult:
    """A projection-norm value; non-exact values are lower bounds certified by the witness."""

    value: float
    exact: bool
    witness: Witness | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "exact": self.exact,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def as_truncation(basis: BasisRep | BasisTruncation, dim: int) -> BasisTruncation:
    if isinstance(basis, BasisTruncation):
        if basis.dim != dim:
            raise DomainError(f"Truncation has dim {basis.dim}, {dim} requested")
        return basis
    return basis.truncate(dim)


def _check_subset(subset: Sequence[int], dim: int) -> tuple[int, ...]:
    out = tuple(sorted({int(j) for j in subset}))
    if out and (out[0] < 0 or out[-1] >= dim):
        raise DomainError(
            f"Index set must lie in [0, {dim})",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    return out


def batched_exact_norms(
    trunc: BasisTruncation, masks: npt.NDArray[np.bool_]
) -> npt.NDArray[np.float64]:
    """Exact ||S_A|| for every mask row, batched through M D_A M^-1."""
    kind = trunc.exact_kind
    if kind is None:
        raise InternalError(f"No exact norm path for {trunc.label}")
    M, Minv = trunc.matrix, trunc.inverse
    out = np.empty(masks.shape[0])
    for start in range(0, masks.shape[0], BATCH):
        chunk = masks[start : start + BATCH].astype(np.float64)
        K = (M[None, :, :] * chunk[:, None, :]) @ Minv
        out[start : start + BATCH] = _matrix_norms(K, kind)
    return out


def _matrix_norms(K: npt.NDArray[np.float64], kind: ExactKind) -> npt.NDArray[np.float64]:
    if K.shape[-1] == 0:
        return np.zeros(K.shape[0])
    if kind == "l1":
        return np.abs(K).sum(axis=1).max(axis=1)
    if kind == "linf":
        return np.abs(K).sum(axis=2).max(axis=1)
    return np.linalg.norm(K, ord=2, axis=(1, 2))


def exact_projection(trunc: BasisTruncation, subset: Sequence[int]) -> ProjNormResult:
    """Exact operator norm of S_A with a vector attaining it."""
    kind = trunc.exact_kind
    if kind is None:
        raise InternalError(f"No exact norm path for {trunc.label}")
    dim = trunc.dim
    mask = np.zeros(dim, dtype=bool)
    mask[list(subset)] = True
    if not mask.any():
        return ProjNormResult(value=0.0, exact=True, witness=Witness.of(np.eye(dim)[0], ()))

    M, Minv = trunc.matrix, trunc.inverse
    K = (M * mask[None, :]) @ Minv
    if kind == "l1":
        col = int(np.argmax(np.abs(K).sum(axis=0)))
        y = np.zeros(dim)
        y[col] = 1.0
    elif kind == "linf":
        row = int(np.argmax(np.abs(K).sum(axis=1)))
        y = np.where(K[row] >= 0.0, 1.0, -1.0)
    else:
        _, _, vt = np.linalg.svd(K)
        y = vt[0]
    f = Minv @ y
    witness = Witness.of(f, np.flatnonzero(mask))
    value = float(_matrix_norms(K[None, :, :], kind)[0])
    return ProjNormResult(value=value, exact=True, witness=witness)


def search_projection(
    trunc: BasisTruncation,
    subset: Sequence[int],
    rng: np.random.Generator,
    starts: int = 3,
    sweeps: int = 200,
) -> ProjNormResult:
    """Lower bound on ||S_A|| by coordinate ascent from structured and random starts."""
    dim = trunc.dim
    mask = np.zeros(dim, dtype=bool)
    mask[list(subset)] = True
    if not mask.any():
        return ProjNormResult(value=0.0, exact=True, witness=Witness.of(np.eye(dim)[0], ()))

    def ratio(f: npt.NDArray[np.float64]) -> float:
        values = trunc.norms(np.vstack([f * mask, f]))
        return float(values[0] / values[1]) if values[1] > 0.0 else 0.0

    candidates = [
        np.where(np.arange(dim) % 2 == 0, 1.0, -1.0),
        mask.astype(np.float64),
        np.ones(dim),
    ]
    candidates.extend(rng.standard_normal(dim) for _ in range(starts))

    best_f, best = candidates[0], -1.0
    for x0 in candidates:
        x, value = coordinate_ascent(ratio, x0, sweeps=sweeps)
        if value > best:
            best_f, best = x, value

    witness = Witness.of(best_f, np.flatnonzero(mask))
    return ProjNormResult(value=witness.ratio(trunc), exact=False, witness=witness)


def proj_operator_norm(
    basis: BasisRep | BasisTruncation,
    subset: Sequence[int],
    dim: int,
    budget: int = 3,
    seed: int = 0,
    sweeps: int = 200,
) -> ProjNormResult:
    """Norm of f -> S_A f on the dim-truncation of ``basis``.

    ``budget`` is the number of random ascent starts used when no exact
    matrix path exists.
    """
    trunc = as_truncation(basis, dim)
    chosen = _check_subset(subset, dim)

    if trunc.unconditional:
        if not chosen:
            return ProjNormResult(value=0.0, exact=True, witness=Witness.of(np.eye(dim)[0], ()))
        e = np.zeros(dim)
        e[chosen[0]] = 1.0
        return ProjNormResult(value=1.0, exact=True, witness=Witness.of(e, chosen))

    if trunc.exact_kind is not None:
        return exact_projection(trunc, chosen)

    logger.debug("Searching projection norm", basis=trunc.label, size=len(chosen))
    rng = np.random.default_rng(seed)
    return search_projection(trunc, chosen, rng, starts=budget, sweeps=sweeps)
