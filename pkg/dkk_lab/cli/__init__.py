"""Experiment commands, verification suites and the config-to-object factory."""

from .commands import (
    CONSTANT_KINDS,
    cmd_constants,
    cmd_greedy,
    cmd_norm,
    cmd_recheck,
    cmd_verify,
    cmd_weights,
)
from .factory import Lab, build_basis, build_partition, build_space, build_weight
from .router import COMMANDS, SUITES, get_command, list_commands, list_suites
from .suites import SuiteContext

__all__ = [
    "CONSTANT_KINDS",
    "cmd_constants",
    "cmd_greedy",
    "cmd_norm",
    "cmd_recheck",
    "cmd_verify",
    "cmd_weights",
    "Lab",
    "build_basis",
    "build_partition",
    "build_space",
    "build_weight",
    "COMMANDS",
    "SUITES",
    "get_command",
    "list_commands",
    "list_suites",
    "SuiteContext",
]
