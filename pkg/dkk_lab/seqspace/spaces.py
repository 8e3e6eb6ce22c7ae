"""
Sequence-space norms: l_p (with c0 as p = inf), Lorentz d_q(w),
weak Lorentz d_1^inf(w) and the bounded-variation norm.

Symmetric norms are always computed from the non-increasing rearrangement,
so permuting or re-signing the support gives bit-identical values.
"""

import math
from typing import Annotated, Any, ClassVar, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from dkk_lab.error import ConfigurationError, DomainError, ErrorCode
from dkk_lab.metrics import metrics
from dkk_lab.seqspace.sequences import as_batch, rearrange_rows
from dkk_lab.seqspace.weights import (
    ClassicalLorentzWeight,
    ExplicitWeight,
    PowerWeight,
    Weight,
    cumulative_weights,
)

ExactKind = Literal["l1", "l2", "linf"]


def _support_width(R: npt.NDArray[np.float64]) -> int:
    """Longest nonzero prefix over rows of a rearranged batch; weights past it are never read."""
    return int((R > 0.0).sum(axis=1).max(initial=0))


class SequenceSpace(BaseModel):
    """Common surface of every norm evaluator on finite sequences."""

    model_config = ConfigDict(frozen=True)

    subsymmetric: ClassVar[bool] = False
    is_norm: ClassVar[bool] = True

    @property
    def exact_kind(self) -> ExactKind | None:
        """Matrix-norm family this norm belongs to, if any."""
        return None

    @property
    def label(self) -> str:
        raise NotImplementedError

    def _evaluate(self, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        raise NotImplementedError

    def norms(self, X: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Norm of every row of ``X``."""
        batch = as_batch(X)
        metrics.record_norm_evaluations(self.label, batch.shape[0])
        if batch.shape[1] == 0:
            return np.zeros(batch.shape[0])
        return self._evaluate(batch)

    def norm(self, f: npt.ArrayLike) -> float:
        return float(self.norms(f)[0])

    def lambdas(self, m: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Fundamental function Lambda_m for each entry of ``m``."""
        raise DomainError(
            f"Space {self.label} is not subsymmetric; its fundamental function is not defined here",
            code=ErrorCode.NOT_SUBSYMMETRIC,
        )


class LpSpace(SequenceSpace):
    """l_p for 1 <= p < inf; p = inf is the max norm of c0."""

    kind: Literal["lp"] = "lp"
    p: float = Field(ge=1.0)

    subsymmetric: ClassVar[bool] = True

    @field_validator("p", mode="before")
    @classmethod
    def parse_infinity(cls, v: Any) -> Any:
        """Accept 'inf', 'infinity' and 'c0' spellings of p = inf."""
        if isinstance(v, str) and v.strip().lower() in {"inf", "infinity", "c0"}:
            return math.inf
        return v

    @property
    def exact_kind(self) -> ExactKind | None:
        if self.p == 1.0:
            return "l1"
        if self.p == 2.0:
            return "l2"
        if math.isinf(self.p):
            return "linf"
        return None

    @property
    def label(self) -> str:
        return "c0" if math.isinf(self.p) else f"l{self.p:g}"

    @property
    def conjugate(self) -> float:
        """Hoelder conjugate exponent p'."""
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    def _evaluate(self, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        R = rearrange_rows(X)
        if self.p == 1.0:
            return R.sum(axis=1)
        if self.p == 2.0:
            return np.sqrt((R * R).sum(axis=1))
        if math.isinf(self.p):
            return R[:, 0].copy()
        return (R**self.p).sum(axis=1) ** (1.0 / self.p)

    def lambdas(self, m: npt.ArrayLike) -> npt.NDArray[np.float64]:
        mm = np.asarray(m, dtype=np.float64)
        if math.isinf(self.p):
            return np.ones_like(mm)
        return mm ** (1.0 / self.p)


class LorentzSpace(SequenceSpace):
    """d_q(w): (sum_n (a*_n)^q w_n)^(1/q) for a non-increasing weight."""

    kind: Literal["lorentz"] = "lorentz"
    q: float = Field(default=1.0, ge=1.0)
    weight: Weight

    subsymmetric: ClassVar[bool] = True

    @field_validator("weight")
    @classmethod
    def weight_must_be_non_increasing(cls, v: Weight) -> Weight:
        """A Lorentz norm needs a non-increasing weight."""
        if not v.is_non_increasing():
            raise ValueError("Lorentz spaces require a non-increasing weight")
        return v

    @property
    def label(self) -> str:
        return f"d{self.q:g}({_weight_label(self.weight)})"

    def _evaluate(self, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        R = rearrange_rows(X)
        k = _support_width(R)
        w = np.zeros(R.shape[1])
        w[:k] = self.weight.values(k)
        if self.q == 1.0:
            return (R * w).sum(axis=1)
        return ((R**self.q) * w).sum(axis=1) ** (1.0 / self.q)

    def lambdas(self, m: npt.ArrayLike) -> npt.NDArray[np.float64]:
        mm = np.asarray(m, dtype=np.intp)
        if mm.size == 0:
            return np.zeros(0)
        W = cumulative_weights(self.weight, int(mm.max()))
        return W[mm - 1] ** (1.0 / self.q)


class WeakLorentzSpace(SequenceSpace):
    """d_1^inf(w): sup_m a*_m W_m. Only a quasi-norm in general."""

    kind: Literal["weak_lorentz"] = "weak_lorentz"
    weight: Weight

    is_norm: ClassVar[bool] = False

    @property
    def label(self) -> str:
        return f"d1inf({_weight_label(self.weight)})"

    def _evaluate(self, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        R = rearrange_rows(X)
        k = _support_width(R)
        W = np.zeros(R.shape[1])
        W[:k] = cumulative_weights(self.weight, k)
        return (R * W).max(axis=1)


class VariationSpace(SequenceSpace):
    """|a_1| + sum_j |a_j - a_(j-1)| over the stored window.

    With ``closed`` the final return to zero is included, which gives the
    norm of the zero-extended sequence.
    """

    kind: Literal["variation"] = "variation"
    closed: bool = False

    @property
    def label(self) -> str:
        return "v1_closed" if self.closed else "v1"

    def _evaluate(self, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        total = np.abs(X[:, 0]) + np.abs(np.diff(X, axis=1)).sum(axis=1)
        if self.closed:
            total = total + np.abs(X[:, -1])
        return total


SymSpaceSpec = Annotated[
    LpSpace | LorentzSpace | WeakLorentzSpace | VariationSpace,
    Field(discriminator="kind"),
]


def _weight_label(weight: Weight) -> str:
    if isinstance(weight, PowerWeight):
        return f"n^{weight.exponent:g}"
    if isinstance(weight, ClassicalLorentzWeight):
        return f"lorentz({weight.p:g},{weight.q:g})"
    return f"explicit[{len(weight.entries)}]"


def _build(model: type[SequenceSpace], **kwargs: Any) -> Any:
    try:
        return model(**kwargs)
    except ValidationError as e:
        raise ConfigurationError(
            f"Invalid {model.__name__} parameters",
            details=str(e),
        ) from e


def lp(p: float | str) -> LpSpace:
    """l_p space; p = inf (or 'c0') gives c0."""
    return _build(LpSpace, p=p)  # type: ignore[no-any-return]


def c0() -> LpSpace:
    return lp(math.inf)


def lorentz(weight: Weight, q: float = 1.0) -> LorentzSpace:
    return _build(LorentzSpace, q=q, weight=weight)  # type: ignore[no-any-return]


def weak_lorentz(weight: Weight) -> WeakLorentzSpace:
    return _build(WeakLorentzSpace, weight=weight)  # type: ignore[no-any-return]


def variation(closed: bool = False) -> VariationSpace:
    return VariationSpace(closed=closed)


def power_weight(exponent: float) -> PowerWeight:
    return PowerWeight(exponent=exponent)


def explicit_weight(entries: list[float] | tuple[float, ...]) -> ExplicitWeight:
    try:
        return ExplicitWeight(entries=tuple(entries))
    except ValidationError as e:
        raise ConfigurationError("Invalid explicit weight", details=str(e)) from e


def eval_norm(space: SequenceSpace, f: npt.ArrayLike) -> float:
    """Exact norm of ``f`` in ``space``; the empty sequence has norm 0."""
    return space.norm(f)


def fundamental_lambda(space: SequenceSpace, m: int) -> float:
    """Lambda_m = norm of the indicator of the first m coordinates."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}", code=ErrorCode.INDEX_OUT_OF_RANGE)
    if not space.subsymmetric:
        raise DomainError(
            f"Space {space.label} is not subsymmetric",
            code=ErrorCode.NOT_SUBSYMMETRIC,
        )
    return float(space.lambdas([m])[0])


def lambda_star(space: SequenceSpace, m: int) -> float:
    """Lambda*_m = m / Lambda_m."""
    return m / fundamental_lambda(space, m)
