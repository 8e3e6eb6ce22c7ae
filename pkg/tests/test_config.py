"""
Tests for configuration module.

Tests for the process configuration and experiment-file parsing.
"""

import math

import pytest

from dkk_lab.config import (
    ExperimentConfig,
    LabConfig,
    get_default_config,
    load_config,
    load_experiment,
    parse_experiment,
)
from dkk_lab.error import ConfigParseError, ConfigurationError, ErrorCode


class TestLabConfig:
    """Test process configuration."""

    def test_defaults(self):
        config = get_default_config()
        assert isinstance(config, LabConfig)
        assert config.log_level == "INFO"
        assert config.execution.max_workers == 4
        assert config.metrics_textfile is None

    def test_load_from_env(self, monkeypatch, temp_dir):
        """Test loading configuration from environment variables."""
        monkeypatch.setenv("DKK_LAB_LOG_LEVEL", "debug")
        monkeypatch.setenv("DKK_LAB_MAX_WORKERS", "8")
        monkeypatch.setenv("DKK_LAB_METRICS_TEXTFILE", str(temp_dir / "lab.prom"))

        config = load_config()

        assert config.log_level == "DEBUG"
        assert config.execution.max_workers == 8
        assert config.metrics_textfile == temp_dir / "lab.prom"

    @pytest.mark.parametrize("value", ["many", "0", "65"])
    def test_invalid_workers(self, monkeypatch, value):
        monkeypatch.setenv("DKK_LAB_MAX_WORKERS", value)
        with pytest.raises(ConfigurationError):
            load_config()


class TestExperimentParsing:
    """Test experiment files."""

    def test_sample_file(self, experiment_file):
        config = load_experiment(experiment_file)
        assert config.run.command == "constants"
        assert config.run.seed == 7
        assert config.run.kinds == ["L_m", "k_m"]
        assert config.space.p == 2.0
        assert config.basis.kind == "summing"
        assert config.partition.horizon == 4
        assert config.range.as_list() == [1, 2, 3, 4, 5, 6]

    def test_defaults_for_missing_sections(self):
        config = parse_experiment("[run]\ncommand = norm\n")
        assert config.space.kind == "lp"
        assert config.partition.kind == "dyadic"
        assert config.run.format == "csv"
        assert config.run.seed is None

    def test_nested_weight_keys(self):
        text = "[space]\nkind = lorentz\nweight.kind = explicit\nweight.entries = 1, 0.5, 0.25\n"
        config = parse_experiment(text)
        assert config.space.weight.kind == "explicit"
        assert config.space.weight.entries == [1.0, 0.5, 0.25]

    def test_infinite_p(self):
        assert math.isinf(parse_experiment("[space]\np = inf\n").space.p)

    def test_vectors_and_values(self):
        text = "[norm]\nvectors = 3, 4; 1 1 1\n[range]\nvalues = 5, 2, 5\n"
        config = parse_experiment(text)
        assert config.norm.vectors == [[3.0, 4.0], [1.0, 1.0, 1.0]]
        assert config.range.as_list() == [2, 5]

    def test_inline_comments(self):
        config = parse_experiment("[run]\nseed = 11  ; fixed\nmode = search  # faster\n")
        assert config.run.seed == 11
        assert config.run.mode == "search"

    def test_unknown_section(self):
        with pytest.raises(ConfigParseError) as exc_info:
            parse_experiment("[server]\nport = 1\n")
        assert exc_info.value.field == "server"
        assert exc_info.value.code == ErrorCode.CONFIG_PARSE_FAILED

    def test_invalid_value_reports_line_and_field(self):
        text = "[run]\ncommand = norm\n\n[space]\nkind = lp\np = 0.5\n"
        with pytest.raises(ConfigParseError) as exc_info:
            parse_experiment(text)
        err = exc_info.value
        assert err.field == "space.p"
        assert err.line == 6
        assert "line 6" in err.message

    def test_unknown_key(self):
        with pytest.raises(ConfigParseError) as exc_info:
            parse_experiment("[basis]\ncolour = blue\n")
        assert exc_info.value.field == "basis.colour"

    def test_malformed_file(self):
        with pytest.raises(ConfigParseError):
            parse_experiment("no section header\n")

    def test_missing_file(self, temp_dir):
        with pytest.raises(ConfigParseError):
            load_experiment(temp_dir / "absent.ini")

    def test_exact_cap(self):
        with pytest.raises(ConfigParseError):
            parse_experiment("[run]\nmode = exact\nkinds = L_m\n[range]\nstop = 21\n")
        config = parse_experiment("[run]\nmode = search\nkinds = L_m\n[range]\nstop = 40\n")
        assert config.range.stop == 40

    def test_block_repeat_needs_sizes(self):
        with pytest.raises(ConfigParseError):
            parse_experiment("[basis]\nkind = block_repeat\n")


class TestExperimentConfig:
    """Test experiment helpers."""

    def test_require_seed(self):
        with pytest.raises(ConfigurationError) as exc_info:
            ExperimentConfig().require_seed("greedy")
        assert exc_info.value.code == ErrorCode.MISSING_SEED

    def test_echo_round_trips(self, experiment_file):
        config = load_experiment(experiment_file)
        assert ExperimentConfig.model_validate(config.echo()) == config
