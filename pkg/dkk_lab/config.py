"""
Configuration management module for dkk-lab.

Two layers: the process configuration (logging, workers, metrics output)
read from DKK_LAB_* environment variables, and experiment files, flat INI
documents with one section per concern.
"""

import configparser
import math
import os
import re
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from dkk_lab.error import ConfigParseError, ConfigurationError, ErrorCode, ErrorContext

# Caps shared by validation and the engines.
MAX_EXACT_M = 20
MAX_SMALLCASE_DIM = 12
MAX_TRIALS = 100_000
MAX_BUDGET = 1_000_000
MAX_DYADIC_HORIZON = 12

SECTIONS = ("run", "space", "basis", "partition", "range", "norm")


def _split_list(v: Any) -> Any:
    if isinstance(v, str):
        parts = [p for p in re.split(r"[,\s]+", v.strip()) if p]
        return parts
    return v


class ExecutionConfig(BaseModel):
    """Execution configuration."""

    max_workers: int = Field(default=4, ge=1, le=64)


class LabConfig(BaseModel):
    """Process configuration for dkk-lab."""

    model_config = ConfigDict(extra="ignore")

    log_level: str = Field(default="INFO")
    execution: ExecutionConfig = Field(default_factory=ExecutionConfig)
    metrics_textfile: Path | None = None


def load_config() -> LabConfig:
    """
    Load configuration from environment variables.

    Returns:
        LabConfig object with loaded settings
    """
    config = LabConfig()

    log_level = os.getenv("DKK_LAB_LOG_LEVEL")
    if log_level:
        config.log_level = log_level.upper()

    max_workers = os.getenv("DKK_LAB_MAX_WORKERS")
    if max_workers:
        try:
            config.execution = ExecutionConfig(max_workers=int(max_workers))
        except (ValueError, ValidationError) as e:
            raise ConfigurationError(
                f"Invalid DKK_LAB_MAX_WORKERS: {max_workers}",
                details=str(e),
                suggestion="Use an integer between 1 and 64",
            ) from e

    textfile = os.getenv("DKK_LAB_METRICS_TEXTFILE")
    if textfile:
        config.metrics_textfile = Path(textfile)

    return config


def get_default_config() -> LabConfig:
    """Get default configuration."""
    return LabConfig()


class WeightConfig(BaseModel):
    """Weight of a Lorentz-type space."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["power", "lorentz", "explicit"] = "power"
    exponent: float = -0.5
    p: float = 2.0
    q: float = 1.0
    entries: list[float] = Field(default_factory=list)

    @field_validator("entries", mode="before")
    @classmethod
    def split_entries(cls, v: Any) -> Any:
        return _split_list(v)


class SpaceConfig(BaseModel):
    """Sequence space: lp (p may be inf), lorentz, weak_lorentz or variation."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["lp", "lorentz", "weak_lorentz", "variation"] = "lp"
    p: float = 2.0
    q: float = Field(default=1.0, ge=1.0)
    weight: WeightConfig = Field(default_factory=WeightConfig)
    closed: bool = False

    @field_validator("p", mode="before")
    @classmethod
    def parse_infinity(cls, v: Any) -> Any:
        if isinstance(v, str) and v.strip().lower() in {"inf", "infinity", "c0"}:
            return math.inf
        return v

    @field_validator("p")
    @classmethod
    def p_at_least_one(cls, v: float) -> float:
        if v < 1.0:
            raise ValueError("p must be at least 1")
        return v


class BasisConfig(BaseModel):
    """Seed basis: unit vectors of [space], summing, difference or a combination."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["unit", "summing", "difference", "direct_sum", "block_repeat"] = "summing"
    left: Literal["unit", "summing", "difference"] = "summing"
    right: Literal["unit", "summing", "difference"] = "difference"
    seed: Literal["unit", "summing", "difference"] = "summing"
    sizes: list[int] = Field(default_factory=list)
    p: float = 1.0

    @field_validator("sizes", mode="before")
    @classmethod
    def split_sizes(cls, v: Any) -> Any:
        return _split_list(v)

    @model_validator(mode="after")
    def repeat_needs_sizes(self) -> "BasisConfig":
        if self.kind == "block_repeat" and not self.sizes:
            raise ValueError("block_repeat needs copy sizes")
        if any(n < 1 for n in self.sizes):
            raise ValueError("copy sizes must be positive")
        return self


class PartitionConfig(BaseModel):
    """Ordered partition: dyadic up to a horizon, or explicit block sizes."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["dyadic", "explicit"] = "dyadic"
    horizon: int = Field(default=7, ge=1, le=MAX_DYADIC_HORIZON)
    sizes: list[int] = Field(default_factory=list)

    @field_validator("sizes", mode="before")
    @classmethod
    def split_sizes(cls, v: Any) -> Any:
        return _split_list(v)

    @model_validator(mode="after")
    def explicit_needs_sizes(self) -> "PartitionConfig":
        if self.kind == "explicit" and not self.sizes:
            raise ValueError("explicit partitions need block sizes")
        if any(n < 1 for n in self.sizes):
            raise ValueError("block sizes must be positive")
        return self


class RangeConfig(BaseModel):
    """Values of m (or r) to sweep: start..stop inclusive, or an explicit list."""

    model_config = ConfigDict(extra="forbid")

    start: int = Field(default=1, ge=1)
    stop: int = Field(default=8, ge=1)
    values: list[int] = Field(default_factory=list)

    @field_validator("values", mode="before")
    @classmethod
    def split_values(cls, v: Any) -> Any:
        return _split_list(v)

    @model_validator(mode="after")
    def ordered(self) -> "RangeConfig":
        if self.stop < self.start:
            raise ValueError("stop must not be below start")
        if any(v < 1 for v in self.values):
            raise ValueError("range values must be positive")
        return self

    def as_list(self) -> list[int]:
        return sorted(set(self.values)) if self.values else list(range(self.start, self.stop + 1))


class NormConfig(BaseModel):
    """Explicit vectors and the norm to evaluate them in."""

    model_config = ConfigDict(extra="forbid")

    target: Literal["space", "basis", "dkk"] = "space"
    vectors: list[list[float]] = Field(default_factory=list)

    @field_validator("vectors", mode="before")
    @classmethod
    def parse_vectors(cls, v: Any) -> Any:
        """One vector per line (or per ';'), entries separated by commas or spaces."""
        if isinstance(v, str):
            rows = [r for r in re.split(r"[;\n]", v) if r.strip()]
            return [_split_list(r) for r in rows]
        return v


Command = Literal["norm", "constants", "greedy", "weights", "verify"]


class RunConfig(BaseModel):
    """Run options shared by all commands."""

    model_config = ConfigDict(extra="forbid")

    command: Command | None = None
    seed: int | None = Field(default=None, ge=0)
    mode: Literal["exact", "search"] = "exact"
    budget: int = Field(default=64, ge=0, le=MAX_BUDGET)
    trials: int = Field(default=1000, ge=1, le=MAX_TRIALS)
    sweeps: int = Field(default=200, ge=1, le=10_000)
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"
    timings: bool = False
    kinds: list[str] = Field(default_factory=lambda: ["L_m", "k_m"])
    suites: list[str] = Field(default_factory=list)
    target: Literal["space", "basis", "dkk"] = "dkk"
    dim: int | None = Field(default=None, ge=1)
    inner_dim_cap: int = Field(default=MAX_EXACT_M, ge=1, le=MAX_EXACT_M)
    growth_power: float = Field(default=1.0, gt=0.0)

    @field_validator("kinds", "suites", mode="before")
    @classmethod
    def split_names(cls, v: Any) -> Any:
        return _split_list(v)


class ExperimentConfig(BaseModel):
    """One experiment file."""

    model_config = ConfigDict(extra="forbid")

    run: RunConfig = Field(default_factory=RunConfig)
    space: SpaceConfig = Field(default_factory=SpaceConfig)
    basis: BasisConfig = Field(default_factory=BasisConfig)
    partition: PartitionConfig = Field(default_factory=PartitionConfig)
    range: RangeConfig = Field(default_factory=RangeConfig)
    norm: NormConfig = Field(default_factory=NormConfig)

    @model_validator(mode="after")
    def within_caps(self) -> "ExperimentConfig":
        top = max(self.range.as_list())
        if self.run.mode == "exact" and "L_m" in self.run.kinds and top > MAX_EXACT_M:
            raise ValueError(f"exact L_m is capped at m = {MAX_EXACT_M}; use mode = search")
        return self

    def require_seed(self, command: str) -> int:
        if self.run.seed is None:
            raise ConfigurationError(
                f"Command '{command}' is randomized and needs a seed",
                suggestion="Set seed in [run] or pass --seed",
                context=ErrorContext(operation=command),
                code=ErrorCode.MISSING_SEED,
            )
        return self.run.seed

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def _nest(items: dict[str, str]) -> dict[str, Any]:
    """'weight.kind' = x becomes {'weight': {'kind': x}}."""
    out: dict[str, Any] = {}
    for key, value in items.items():
        target = out
        parts = key.split(".")
        for part in parts[:-1]:
            target = target.setdefault(part, {})
        target[parts[-1]] = value
    return out


def _line_of(text: str, section: str, key: str) -> int | None:
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
        elif current == section and re.match(rf"{re.escape(key)}\s*[=:]", line):
            return number
    return None


def parse_experiment(text: str, source: str = "<string>") -> ExperimentConfig:
    """Parse and validate the text of an experiment file."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=source)
    except configparser.MissingSectionHeaderError as e:
        raise ConfigParseError("Missing section header", line=e.lineno, details=str(e)) from e
    except configparser.ParsingError as e:
        errors = getattr(e, "errors", [])
        line = errors[0][0] if errors else None
        raise ConfigParseError("Malformed experiment file", line=line, details=str(e)) from e
    except (
        configparser.DuplicateSectionError,
        configparser.DuplicateOptionError,
    ) as e:
        raise ConfigParseError("Duplicate entry in experiment file", line=e.lineno, details=str(e)) from e
    except configparser.Error as e:
        raise ConfigParseError("Unreadable experiment file", details=str(e)) from e

    raw: dict[str, Any] = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigParseError(
                f"Unknown section [{section}]",
                field=section,
            )
        raw[section] = _nest(dict(parser.items(section)))

    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        loc = [str(p) for p in first["loc"] if not isinstance(p, int)]
        field = ".".join(loc) or "experiment"
        line = _line_of(text, loc[0], loc[1]) if len(loc) >= 2 else None
        raise ConfigParseError(first["msg"], line=line, field=field, details=str(e)) from e


def load_experiment(path: str | Path) -> ExperimentConfig:
    """Read an experiment file from disk."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigParseError(f"Cannot read experiment file {p}", details=str(e)) from e
    return parse_experiment(text, source=str(p))
