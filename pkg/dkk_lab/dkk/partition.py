"""
Finite ordered partitions of [0, M_R) into consecutive blocks.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np
import numpy.typing as npt

from dkk_lab.error import ConfigurationError, DomainError, ErrorCode

# 2^12 - 1 coordinates keeps every sweep desk-sized.
MAX_DYADIC_HORIZON = 12


@dataclass(frozen=True)
class Partition:
    """Consecutive blocks sigma_1, ..., sigma_R with the given sizes."""

    block_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.block_sizes:
            raise ConfigurationError(
                "A partition needs at least one block", code=ErrorCode.INVALID_PARTITION
            )
        if any(int(n) < 1 for n in self.block_sizes):
            raise ConfigurationError(
                f"Block sizes must be positive, got {list(self.block_sizes)}",
                code=ErrorCode.INVALID_PARTITION,
            )

    @classmethod
    def dyadic(cls, horizon: int) -> "Partition":
        """sigma_n = [2^(n-1), 2^n - 1] in 1-based terms, for n <= horizon."""
        if not 1 <= horizon <= MAX_DYADIC_HORIZON:
            raise ConfigurationError(
                f"Dyadic horizon must be in [1, {MAX_DYADIC_HORIZON}], got {horizon}",
                code=ErrorCode.INVALID_PARTITION,
            )
        return cls(tuple(1 << n for n in range(horizon)))

    @classmethod
    def explicit(cls, sizes: Iterable[int]) -> "Partition":
        return cls(tuple(int(n) for n in sizes))

    @property
    def horizon(self) -> int:
        return len(self.block_sizes)

    @cached_property
    def sizes(self) -> npt.NDArray[np.int64]:
        return np.asarray(self.block_sizes, dtype=np.int64)

    @cached_property
    def partial_sums(self) -> npt.NDArray[np.int64]:
        """M_1, ..., M_R."""
        return np.cumsum(self.sizes)

    @cached_property
    def offsets(self) -> npt.NDArray[np.int64]:
        """First position of every block."""
        return self.partial_sums - self.sizes

    @property
    def total(self) -> int:
        return int(self.partial_sums[-1])

    def block(self, n: int) -> range:
        """Positions of block n (0-based)."""
        if not 0 <= n < self.horizon:
            raise DomainError(
                f"Block {n} outside the {self.horizon} configured blocks",
                code=ErrorCode.INDEX_OUT_OF_RANGE,
            )
        start = int(self.offsets[n])
        return range(start, start + int(self.sizes[n]))

    @property
    def blocks(self) -> list[range]:
        return [self.block(n) for n in range(self.horizon)]

    @cached_property
    def labels(self) -> npt.NDArray[np.int64]:
        """Block number of every position."""
        return np.repeat(np.arange(self.horizon), self.sizes)

    def block_of(self, j: int) -> int:
        if not 0 <= j < self.total:
            raise DomainError(
                f"Position {j} outside the partitioned range [0, {self.total})",
                code=ErrorCode.SUPPORT_OUT_OF_RANGE,
            )
        return int(self.labels[j])

    def block_union(self, blocks: Iterable[int]) -> npt.NDArray[np.intp]:
        """Positions of the union of the given blocks."""
        chosen = sorted(set(int(n) for n in blocks))
        if not chosen:
            return np.zeros(0, dtype=np.intp)
        return np.concatenate([np.asarray(self.block(n), dtype=np.intp) for n in chosen])

    def blocks_of(self, positions: Sequence[int]) -> list[int]:
        """Blocks whose union is exactly ``positions``; DomainError if not block-aligned."""
        pos = np.unique(np.asarray(positions, dtype=np.intp))
        if pos.size == 0:
            return []
        if pos[0] < 0 or pos[-1] >= self.total:
            raise DomainError(
                f"Positions must lie in [0, {self.total})", code=ErrorCode.SUPPORT_OUT_OF_RANGE
            )
        blocks = sorted(set(int(n) for n in self.labels[pos]))
        if self.block_union(blocks).size != pos.size:
            raise DomainError(
                "Index set is not a union of partition blocks",
                code=ErrorCode.NOT_BLOCK_ALIGNED,
            )
        return blocks

    @property
    def c_sigma(self) -> float:
        """max_r M_r / |sigma_r|."""
        return float(np.max(self.partial_sums / self.sizes))

    @property
    def growth_ratio(self) -> float:
        """max_r M_r / |sigma_(r+1)|; 0 for a single block."""
        if self.horizon < 2:
            return 0.0
        return float(np.max(self.partial_sums[:-1] / self.sizes[1:]))

    @property
    def log_growth(self) -> float:
        """max_r log(M_r) / r."""
        r = np.arange(1, self.horizon + 1)
        return float(np.max(np.log(self.partial_sums) / r))

    def validators(self) -> dict[str, float]:
        return {
            "c_sigma": self.c_sigma,
            "growth_ratio": self.growth_ratio,
            "log_growth": self.log_growth,
        }

    def to_dict(self) -> dict[str, Any]:
        return {"block_sizes": list(self.block_sizes), **self.validators()}

