"""
Seeded Monte-Carlo inputs for the inequality sweeps.

Every stream is derived from the master seed and a tuple of keys, so a row
or a sample batch reproduces regardless of scheduling order.
"""

import hashlib
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from dkk_lab.dkk.partition import Partition


def _key_entropy(key: int | str) -> int:
    if isinstance(key, int):
        return key
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "little")


def derive_rng(seed: int, *keys: int | str) -> np.random.Generator:
    """Independent generator for (seed, keys)."""
    entropy = [int(seed), *(_key_entropy(k) for k in keys)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def row_seed(seed: int, *keys: int | str) -> int:
    """A per-row integer seed derived from the master seed and the row key."""
    return int(derive_rng(seed, *keys).integers(0, 2**32))


def heavy_tailed(rng: np.random.Generator, count: int, dim: int) -> npt.NDArray[np.float64]:
    """Random signs times either uniform or reciprocal-rank magnitudes, on random supports."""
    signs = rng.choice([-1.0, 1.0], size=(count, dim))
    uniform = rng.random((count, dim))
    ranks = np.argsort(rng.random((count, dim)), axis=1)
    reciprocal = 1.0 / (1.0 + ranks)
    use_rank = rng.random(count) < 0.5
    mags = np.where(use_rank[:, None], reciprocal, uniform)

    density = rng.uniform(0.1, 1.0, size=count)
    keep = rng.random((count, dim)) < density[:, None]
    empty = ~keep.any(axis=1)
    if empty.any():
        keep[np.flatnonzero(empty), rng.integers(0, dim, size=int(empty.sum()))] = True
    return signs * mags * keep


def block_supported(
    rng: np.random.Generator,
    count: int,
    partition: Partition,
    blocks: Sequence[int] | None = None,
) -> npt.NDArray[np.float64]:
    """Rows each supported inside one randomly chosen block."""
    choices = np.arange(partition.horizon) if blocks is None else np.asarray(blocks)
    out = np.zeros((count, partition.total))
    picked = rng.choice(choices, size=count)
    for i, n in enumerate(picked):
        block = partition.block(int(n))
        out[i, block.start : block.stop] = heavy_tailed(rng, 1, len(block))[0]
    return out


def block_sets(rng: np.random.Generator, horizon: int, count: int) -> list[list[int]]:
    """Random sets of block numbers, each block kept with probability 1/2."""
    return [sorted(int(n) for n in np.flatnonzero(rng.random(horizon) < 0.5)) for _ in range(count)]


def tail_subset(rng: np.random.Generator, partition: Partition) -> tuple[int, ...]:
    """A set inside blocks r, r+1, ... with at most M_r elements, for a random r."""
    r = int(rng.integers(0, partition.horizon))
    start = int(partition.offsets[r])
    room = partition.total - start
    size = int(rng.integers(1, min(int(partition.partial_sums[r]), room) + 1))
    chosen = rng.choice(room, size=size, replace=False) + start
    return tuple(sorted(int(j) for j in chosen))
