"""
Finitely supported real sequences.

A finite sequence is a one-dimensional float64 numpy array; position 0 holds
the first coefficient. Trailing zeros carry no information.
"""

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt

from dkk_lab.error import DomainError, ErrorCode

FiniteSequence = npt.NDArray[np.float64]


def as_sequence(values: Iterable[float] | npt.ArrayLike) -> FiniteSequence:
    """Coerce input to a finite 1-D float64 array."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DomainError(f"Expected a one-dimensional sequence, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("Sequence entries must be finite real numbers")
    return arr


def as_batch(values: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Coerce input to a 2-D batch whose rows are sequences."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise DomainError(f"Expected a batch of sequences, got shape {arr.shape}")
    return arr


def support(f: FiniteSequence) -> npt.NDArray[np.intp]:
    """Indices with nonzero value."""
    return np.flatnonzero(f)


def fit_length(f: npt.ArrayLike, length: int) -> FiniteSequence:
    """Pad with zeros or drop trailing zeros to reach ``length``.

    Raises DomainError when a nonzero entry lies beyond ``length``.
    """
    arr = as_sequence(f)
    if arr.size <= length:
        return np.pad(arr, (0, length - arr.size))
    if np.any(arr[length:] != 0.0):
        raise DomainError(
            f"Sequence support extends beyond the working range of {length} coordinates",
            code=ErrorCode.SUPPORT_OUT_OF_RANGE,
        )
    return arr[:length].copy()


def fit_batch(X: npt.ArrayLike, length: int) -> npt.NDArray[np.float64]:
    """Row-wise `fit_length` for a batch."""
    arr = as_batch(X)
    cols = arr.shape[1]
    if cols <= length:
        return np.pad(arr, ((0, 0), (0, length - cols)))
    if np.any(arr[:, length:] != 0.0):
        raise DomainError(
            f"Sequence support extends beyond the working range of {length} coordinates",
            code=ErrorCode.SUPPORT_OUT_OF_RANGE,
        )
    return arr[:, :length].copy()


def rearrange_nonincreasing(f: npt.ArrayLike) -> FiniteSequence:
    """Absolute values sorted in non-increasing order, stable on ties."""
    arr = np.abs(as_sequence(f))
    order = np.argsort(-arr, kind="stable")
    return arr[order]


def rearrange_rows(X: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Row-wise non-increasing rearrangement of a batch."""
    return -np.sort(-np.abs(as_batch(X)), axis=1)


def indicator(indices: Iterable[int], length: int, signs: Iterable[float] | None = None) -> FiniteSequence:
    """Signed indicator of an index set."""
    out = np.zeros(length, dtype=np.float64)
    idx = np.fromiter(indices, dtype=np.intp)
    if idx.size and (idx.min() < 0 or idx.max() >= length):
        raise DomainError(
            f"Index set exceeds the working range of {length} coordinates",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
        )
    out[idx] = 1.0 if signs is None else np.fromiter(signs, dtype=np.float64)
    return out
