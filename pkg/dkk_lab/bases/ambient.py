"""
Ambient norm evaluators for basis representations.

Any SequenceSpace is an ambient norm. Composite ambients combine the norms
of consecutive coordinate blocks in an l_p fashion (p = 0 meaning max).
"""

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np
import numpy.typing as npt

from dkk_lab.seqspace import ExactKind, as_batch

_EXACT_FOR_COMBINATION: dict[float, ExactKind] = {1.0: "l1", 2.0: "l2", 0.0: "linf"}


@runtime_checkable
class AmbientNorm(Protocol):
    """Norm evaluator on ambient coordinate vectors."""

    @property
    def exact_kind(self) -> ExactKind | None: ...

    @property
    def label(self) -> str: ...

    def norms(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]: ...


@dataclass(frozen=True)
class LpCombination:
    """Norm of consecutive coordinate blocks combined in l_p (p = 0: max).

    ``parts`` pairs each block's norm with the number of coordinates it owns.
    """

    p: float
    parts: tuple[tuple[AmbientNorm, int], ...]

    @property
    def size(self) -> int:
        return sum(size for _, size in self.parts)

    @property
    def exact_kind(self) -> ExactKind | None:
        target = _EXACT_FOR_COMBINATION.get(self.p)
        if target is None:
            return None
        if all(norm.exact_kind == target for norm, size in self.parts if size > 0):
            return target
        return None

    @property
    def label(self) -> str:
        inner = ",".join(norm.label for norm, _ in self.parts)
        tag = "max" if self.p == 0.0 else f"l{self.p:g}"
        return f"{tag}({inner})"

    def norms(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]:
        batch = as_batch(X)
        if not self.parts:
            return np.zeros(batch.shape[0])
        columns = []
        offset = 0
        for norm, size in self.parts:
            columns.append(norm.norms(batch[:, offset : offset + size]))
            offset += size
        stacked = np.column_stack(columns)
        if self.p == 0.0 or math.isinf(self.p):
            return stacked.max(axis=1)
        if self.p == 1.0:
            return stacked.sum(axis=1)
        return (stacked**self.p).sum(axis=1) ** (1.0 / self.p)
