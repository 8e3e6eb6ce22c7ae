"""
Command and suite registries.

Commands and verification suites register themselves by name with a
decorator; the entry point looks them up instead of branching on names.
"""

from collections.abc import Callable
from typing import Any

from loguru import logger

# Registry for command handlers
COMMANDS: dict[str, Callable[..., Any]] = {}

# Registry for verification suites, in registration order
SUITES: dict[str, Callable[..., Any]] = {}


def register_command(name: str) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """
    Decorator to register a command handler.

    Args:
        name: The name of the command

    Returns:
        Decorator function
    """

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        COMMANDS[name] = func
        logger.debug(f"Registered command: {name}")
        return func

    return decorator


def register_suite(name: str) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """Decorator to register a verification suite."""

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        SUITES[name] = func
        return func

    return decorator


def get_command(name: str) -> Callable[..., Any] | None:
    return COMMANDS.get(name)


def list_commands() -> list[str]:
    return list(COMMANDS.keys())


def list_suites() -> list[str]:
    return list(SUITES.keys())
