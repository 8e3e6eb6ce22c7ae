"""
Pytest configuration and fixtures for dkk-lab tests.
"""

import os
import tempfile
from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest

# Set test environment variables before imports
os.environ["DKK_LAB_LOG_LEVEL"] = "WARNING"
os.environ.pop("DKK_LAB_METRICS_TEXTFILE", None)
os.environ.pop("DKK_LAB_MAX_WORKERS", None)

from dkk_lab.bases import summing_basis, unit_vector_basis  # noqa: E402
from dkk_lab.dkk import DkkSpace, Partition  # noqa: E402
from dkk_lab.seqspace import lorentz, lp, power_weight  # noqa: E402


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "slow: Monte-Carlo sweeps and exhaustive enumerations")


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(20240611)


@pytest.fixture
def l2():
    return lp(2)


@pytest.fixture
def l1():
    return lp(1)


@pytest.fixture
def sqrt_lorentz():
    """d_1(w) with w_n = n^(-1/2)."""
    return lorentz(power_weight(-0.5))


@pytest.fixture
def summing_dkk():
    """DKK(summing basis, l_2, dyadic R = 5), 31 coordinates."""
    return DkkSpace(basis=summing_basis(), space=lp(2), partition=Partition.dyadic(5))


@pytest.fixture
def summing_dkk_7():
    """DKK(summing basis, l_2, dyadic R = 7), 127 coordinates."""
    return DkkSpace(basis=summing_basis(), space=lp(2), partition=Partition.dyadic(7))


@pytest.fixture
def unit_dkk_l1():
    """DKK(unit vectors of l_1, l_1, dyadic R = 5)."""
    space = lp(1)
    return DkkSpace(basis=unit_vector_basis(space), space=space, partition=Partition.dyadic(5))


@pytest.fixture
def experiment_text() -> str:
    """A small constants experiment on the summing basis."""
    return """
[run]
command = constants
mode = exact
kinds = L_m, k_m
seed = 7

[space]
kind = lp
p = 2

[basis]
kind = summing

[partition]
kind = dyadic
horizon = 4

[range]
start = 1
stop = 6
"""


@pytest.fixture
def experiment_file(temp_dir: Path, experiment_text: str) -> Path:
    path = temp_dir / "experiment.ini"
    path.write_text(experiment_text, encoding="utf-8")
    return path
