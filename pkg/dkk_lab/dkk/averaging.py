"""
Averaging projection P (block means) and its complement Q = Id - P.
"""

import numpy as np
import numpy.typing as npt

from dkk_lab.dkk.partition import Partition
from dkk_lab.seqspace import FiniteSequence, as_batch, fit_batch, fit_length


def block_sums(X: npt.ArrayLike, partition: Partition) -> npt.NDArray[np.float64]:
    """Row-wise sums over each block; rows must fit the partitioned range."""
    batch = fit_batch(as_batch(X), partition.total)
    return np.add.reduceat(batch, partition.offsets, axis=1)


def block_means(X: npt.ArrayLike, partition: Partition) -> npt.NDArray[np.float64]:
    return block_sums(X, partition) / partition.sizes


def avg_rows(X: npt.ArrayLike, partition: Partition) -> npt.NDArray[np.float64]:
    """P applied to every row."""
    return np.repeat(block_means(X, partition), partition.sizes, axis=1)


def q_rows(X: npt.ArrayLike, partition: Partition) -> npt.NDArray[np.float64]:
    """Q applied to every row."""
    batch = fit_batch(as_batch(X), partition.total)
    return batch - avg_rows(batch, partition)


def avg_projection(f: npt.ArrayLike, partition: Partition) -> FiniteSequence:
    """Replace every block by its average."""
    return avg_rows(fit_length(f, partition.total), partition)[0]


def q_projection(f: npt.ArrayLike, partition: Partition) -> FiniteSequence:
    return q_rows(fit_length(f, partition.total), partition)[0]
