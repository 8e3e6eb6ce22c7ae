"""
Weight sequences w = (w_n) of strictly positive scalars.
"""

from typing import Annotated, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator

from dkk_lab.error import DomainError, ErrorCode


class PowerWeight(BaseModel):
    """w_n = n^exponent."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["power"] = "power"
    exponent: float = 0.0

    def values(self, n: int) -> npt.NDArray[np.float64]:
        """First ``n`` weights."""
        return np.arange(1, n + 1, dtype=np.float64) ** self.exponent

    def is_non_increasing(self) -> bool:
        return self.exponent <= 0.0


class ClassicalLorentzWeight(BaseModel):
    """w_n = n^(q/p - 1), the weight of the classical space l_{p,q}."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["lorentz"] = "lorentz"
    p: float = Field(gt=0.0)
    q: float = Field(gt=0.0)

    def values(self, n: int) -> npt.NDArray[np.float64]:
        return np.arange(1, n + 1, dtype=np.float64) ** (self.q / self.p - 1.0)

    def is_non_increasing(self) -> bool:
        return self.q <= self.p


class ExplicitWeight(BaseModel):
    """A finite list of weights; evaluation past its end is a domain error."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["explicit"] = "explicit"
    entries: tuple[float, ...] = Field(min_length=1)

    @field_validator("entries")
    @classmethod
    def entries_must_be_positive(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Validate every weight is finite and strictly positive."""
        arr = np.asarray(v, dtype=np.float64)
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError("weights must be finite and strictly positive")
        return v

    def values(self, n: int) -> npt.NDArray[np.float64]:
        if n > len(self.entries):
            raise DomainError(
                f"Explicit weight has {len(self.entries)} entries, {n} requested",
                code=ErrorCode.INDEX_OUT_OF_RANGE,
            )
        return np.asarray(self.entries[:n], dtype=np.float64)

    def is_non_increasing(self) -> bool:
        arr = np.asarray(self.entries)
        return bool(np.all(np.diff(arr) <= 0.0))


Weight = Annotated[
    PowerWeight | ClassicalLorentzWeight | ExplicitWeight,
    Field(discriminator="kind"),
]


def cumulative_weights(weight: Weight, n: int) -> npt.NDArray[np.float64]:
    """W_m = sum of the first m weights, for m = 1..n."""
    return np.cumsum(weight.values(n))
