"""
Basis combinators: interleaved direct sums and l_p-sums of repeated
truncated copies.
"""

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from scipy.linalg import block_diag

from dkk_lab.bases.ambient import LpCombination
from dkk_lab.bases.basis import BasisRep
from dkk_lab.error import ConfigurationError, DomainError, ErrorCode


def _functionals_or_none(basis: BasisRep, dim: int) -> npt.NDArray[np.float64] | None:
    return basis.truncate(dim).coordinate_functional_norms()


def direct_sum(b0: BasisRep, b1: BasisRep) -> BasisRep:
    """B0 (+) B1 with the sum norm; even positions feed B0, odd positions feed B1.

    In 1-based terms odd indices go to B0 and even indices to B1.
    """

    def split(dim: int) -> tuple[int, int]:
        return (dim + 1) // 2, dim // 2

    def matrix(dim: int) -> npt.NDArray[np.float64]:
        n0, n1 = split(dim)
        m0 = b0.truncate(n0).matrix
        m1 = b1.truncate(n1).matrix
        out = np.zeros((m0.shape[0] + m1.shape[0], dim))
        out[: m0.shape[0], 0::2] = m0
        out[m0.shape[0] :, 1::2] = m1
        return out

    def ambient(dim: int) -> LpCombination:
        n0, n1 = split(dim)
        t0, t1 = b0.truncate(n0), b1.truncate(n1)
        return LpCombination(
            p=1.0,
            parts=((t0.ambient, t0.matrix.shape[0]), (t1.ambient, t1.matrix.shape[0])),
        )

    def functionals(dim: int) -> npt.NDArray[np.float64]:
        n0, n1 = split(dim)
        f0 = _functionals_or_none(b0, n0)
        f1 = _functionals_or_none(b1, n1)
        out = np.full(dim, np.nan)
        if f0 is not None:
            out[0::2] = f0
        if f1 is not None:
            out[1::2] = f1
        return out

    def hint() -> int | None:
        if b0.dim_hint is None and b1.dim_hint is None:
            return None
        caps = [2 * b0.dim_hint if b0.dim_hint is not None else math.inf]
        caps.append(2 * b1.dim_hint + 1 if b1.dim_hint is not None else math.inf)
        return int(min(caps))

    return BasisRep(
        name=f"({b0.name}+{b1.name})",
        matrix_fn=matrix,
        ambient_fn=ambient,
        dim_hint=hint(),
        unconditional=b0.unconditional and b1.unconditional,
        functional_fn=functionals,
    )


def _copy_sizes(sizes: Sequence[int], dim: int) -> list[int]:
    total = sum(sizes)
    if dim > total:
        raise DomainError(
            f"Coefficient index {dim} is beyond the {len(sizes)} configured copies ({total} coefficients)",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    out = []
    remaining = dim
    for size in sizes:
        if remaining <= 0:
            break
        out.append(min(size, remaining))
        remaining -= size
    return out


def block_repeat(b0: BasisRep, sizes: Sequence[int], p: float = 1.0) -> BasisRep:
    """Copies of B0 truncated to N_1, N_2, ... coordinates, combined in l_p (p = 0: max)."""
    sizes = [int(n) for n in sizes]
    if not sizes or any(n < 1 for n in sizes):
        raise ConfigurationError("block_repeat needs positive copy sizes", code=ErrorCode.INVALID_PARAMETER)
    if not (p == 0.0 or p >= 1.0):
        raise ConfigurationError(f"block_repeat needs p in {{0}} or [1, inf), got {p}")

    def matrix(dim: int) -> npt.NDArray[np.float64]:
        blocks = [b0.truncate(n).matrix for n in _copy_sizes(sizes, dim)]
        if not blocks:
            return np.zeros((0, 0))
        return np.asarray(block_diag(*blocks), dtype=np.float64)

    def ambient(dim: int) -> LpCombination:
        parts = []
        for n in _copy_sizes(sizes, dim):
            t = b0.truncate(n)
            parts.append((t.ambient, t.matrix.shape[0]))
        return LpCombination(p=p, parts=tuple(parts))

    def functionals(dim: int) -> npt.NDArray[np.float64]:
        chunks = []
        for n in _copy_sizes(sizes, dim):
            f = _functionals_or_none(b0, n)
            chunks.append(np.full(n, np.nan) if f is None else f)
        return np.concatenate(chunks) if chunks else np.zeros(0)

    tag = "max" if p == 0.0 else f"l{p:g}"
    return BasisRep(
        name=f"repeat[{b0.name};{tag};{len(sizes)}]",
        matrix_fn=matrix,
        ambient_fn=ambient,
        dim_hint=sum(sizes),
        unconditional=b0.unconditional,
        functional_fn=functionals,
    )


def copy_offsets(sizes: Sequence[int]) -> list[int]:
    """First coefficient position of each copy."""
    return [int(x) for x in np.concatenate(([0], np.cumsum(sizes)[:-1]))]


def growth_table(sizes: Sequence[int]) -> list[float]:
    """M_r / N_(r+1) for r = 1 .. len(sizes) - 1, with M_r = N_1 + ... + N_r."""
    partial = np.cumsum(sizes)
    return [float(partial[r - 1] / sizes[r]) for r in range(1, len(sizes))]
