"""
Builds spaces, bases, partitions and DKK spaces from an experiment config.
"""

from dataclasses import dataclass
from functools import cached_property

from dkk_lab.bases import (
    BasisRep,
    block_repeat,
    difference_basis,
    direct_sum,
    summing_basis,
    unit_vector_basis,
)
from dkk_lab.config import (
    BasisConfig,
    ExperimentConfig,
    PartitionConfig,
    SpaceConfig,
    WeightConfig,
)
from dkk_lab.dkk import DkkSpace, Partition
from dkk_lab.error import ConfigurationError, ErrorCode
from dkk_lab.greedy import Normer
from dkk_lab.reports import WitnessRecord
from dkk_lab.seqspace import (
    ClassicalLorentzWeight,
    PowerWeight,
    SequenceSpace,
    Weight,
    explicit_weight,
    lorentz,
    lp,
    variation,
    weak_lorentz,
)


def build_weight(cfg: WeightConfig) -> Weight:
    if cfg.kind == "power":
        return PowerWeight(exponent=cfg.exponent)
    if cfg.kind == "lorentz":
        return ClassicalLorentzWeight(p=cfg.p, q=cfg.q)
    return explicit_weight(cfg.entries)


def build_space(cfg: SpaceConfig) -> SequenceSpace:
    if cfg.kind == "lp":
        return lp(cfg.p)
    if cfg.kind == "lorentz":
        return lorentz(build_weight(cfg.weight), q=cfg.q)
    if cfg.kind == "weak_lorentz":
        return weak_lorentz(build_weight(cfg.weight))
    return variation(closed=cfg.closed)


def _named_basis(name: str, space: SequenceSpace) -> BasisRep:
    if name == "unit":
        return unit_vector_basis(space)
    if name == "summing":
        return summing_basis()
    return difference_basis()


def build_basis(cfg: BasisConfig, space: SequenceSpace) -> BasisRep:
    """The seed basis; "unit" means the unit vectors of the configured space."""
    if cfg.kind == "direct_sum":
        return direct_sum(_named_basis(cfg.left, space), _named_basis(cfg.right, space))
    if cfg.kind == "block_repeat":
        return block_repeat(_named_basis(cfg.seed, space), cfg.sizes, p=cfg.p)
    return _named_basis(cfg.kind, space)


def build_partition(cfg: PartitionConfig) -> Partition:
    if cfg.kind == "dyadic":
        return Partition.dyadic(cfg.horizon)
    return Partition.explicit(cfg.sizes)


@dataclass
class Lab:
    """Every object an experiment file describes, built on first use."""

    config: ExperimentConfig

    @cached_property
    def space(self) -> SequenceSpace:
        return build_space(self.config.space)

    @cached_property
    def basis(self) -> BasisRep:
        return build_basis(self.config.basis, self.space)

    @cached_property
    def partition(self) -> Partition:
        return build_partition(self.config.partition)

    @cached_property
    def dkk(self) -> DkkSpace:
        return DkkSpace(basis=self.basis, space=self.space, partition=self.partition)

    def normer(self, target: str, dim: int | None = None) -> Normer:
        """The norm a target name refers to; basis targets need a dimension."""
        if target == "space":
            return self.space
        if target == "dkk":
            return self.dkk
        if target == "basis":
            if dim is None:
                raise ConfigurationError("Basis norms need a truncation dimension")
            return self.basis.truncate(dim)
        raise ConfigurationError(
            f"Unknown norm target '{target}'",
            suggestion="Use space, basis or dkk",
            code=ErrorCode.INVALID_PARAMETER,
        )

    def resolve(self, record: WitnessRecord) -> Normer:
        return self.normer(record.target, record.dim)
