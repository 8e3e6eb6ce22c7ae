"""
Error type definitions and handling for dkk-lab.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class ErrorCategory(str, Enum):
    """Error category for classification."""

    CONFIGURATION = "CONFIGURATION"
    DOMAIN = "DOMAIN"
    BUDGET = "BUDGET"
    FIT = "FIT"
    VERIFICATION = "VERIFICATION"
    INTERNAL = "INTERNAL"


class ErrorCode(int, Enum):
    """Error codes for dkk-lab.

    Format:
    - 40001-40099: Configuration errors
    - 40100-40199: Domain errors (inputs outside an operation's domain)
    - 40200-40299: Budget errors (enumeration or dimension caps)
    - 40300-40399: Fit errors
    - 40400-40499: Verification errors
    - 40500-40599: Internal errors
    """

    # Configuration errors (40001-40099)
    INVALID_PARAMETER = 40001
    INVALID_WEIGHT = 40002
    INVALID_PARTITION = 40003
    CONFIG_PARSE_FAILED = 40004
    MISSING_SEED = 40005

    # Domain errors (40100-40199)
    NOT_SUBSYMMETRIC = 40100
    SUPPORT_OUT_OF_RANGE = 40101
    NOT_BLOCK_ALIGNED = 40102
    HYPOTHESIS_VIOLATED = 40103
    NOT_IN_RANGE_OF_Q = 40104
    INDEX_OUT_OF_RANGE = 40105

    # Budget errors (40200-40299)
    EXACT_CAP_EXCEEDED = 40200
    DIMENSION_CAP_EXCEEDED = 40201

    # Fit errors (40300-40399)
    TOO_FEW_POINTS = 40300
    DEGENERATE_ABSCISSAS = 40301

    # Verification errors (40400-40499)
    WITNESS_MISMATCH = 40400
    SUITE_FAILED = 40401

    # Internal errors (40500-40599)
    SINGULAR_TRUNCATION = 40500
    INTERNAL_ERROR = 40501


@dataclass
class ErrorContext:
    """Error context information."""

    operation: str
    parameters: dict[str, Any] = field(default_factory=dict)


class DkkLabError(Exception):
    """Base exception for dkk-lab errors."""

    def __init__(
        self,
        code: ErrorCode,
        message: str,
        details: str | None = None,
        suggestion: str | None = None,
        context: ErrorContext | None = None,
    ):
        self.code = code
        self.message = message
        self.details = details
        self.suggestion = suggestion
        self.context = context or ErrorContext(operation="unknown")

        super().__init__(self.message)

    @property
    def category(self) -> ErrorCategory:
        """Get error category based on code range."""
        code_value = self.code.value

        if 40001 <= code_value <= 40099:
            return ErrorCategory.CONFIGURATION
        elif 40100 <= code_value <= 40199:
            return ErrorCategory.DOMAIN
        elif 40200 <= code_value <= 40299:
            return ErrorCategory.BUDGET
        elif 40300 <= code_value <= 40399:
            return ErrorCategory.FIT
        elif 40400 <= code_value <= 40499:
            return ErrorCategory.VERIFICATION
        else:
            return ErrorCategory.INTERNAL

    def to_dict(self) -> dict[str, Any]:
        """Convert error to dictionary for JSON serialization."""
        return {
            "code": self.code.value,
            "name": self.code.name,
            "message": self.message,
            "details": self.details,
            "suggestion": self.suggestion,
            "context": {
                "operation": self.context.operation,
                "parameters": self.context.parameters,
            },
            "category": self.category.value,
        }

    def to_user_message(self) -> str:
        """Get user-friendly error message."""
        msg = self.message
        if self.suggestion:
            msg += f"\n\nSuggestion: {self.suggestion}"
        return msg


class ConfigurationError(DkkLabError):
    """Raised when a space, weight, basis or partition parameter is invalid."""

    def __init__(
        self,
        message: str,
        details: str | None = None,
        suggestion: str | None = None,
        context: ErrorContext | None = None,
        code: ErrorCode = ErrorCode.INVALID_PARAMETER,
    ):
        super().__init__(
            code=code,
            message=message,
            details=details,
            suggestion=suggestion,
            context=context,
        )


class ConfigParseError(ConfigurationError):
    """Raised when an experiment file cannot be parsed or validated.

    Carries the offending line number (syntax problems) or the dotted
    field path (validation problems).
    """

    def __init__(
        self,
        message: str,
        line: int | None = None,
        field: str | None = None,
        details: str | None = None,
    ):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        where = f" ({', '.join(location)})" if location else ""
        super().__init__(
            message=f"{message}{where}",
            details=details,
            suggestion="Check the experiment file against the documented sections",
            context=ErrorContext(
                operation="load_experiment",
                parameters={"line": line, "field": field},
            ),
            code=ErrorCode.CONFIG_PARSE_FAILED,
        )


class DomainError(DkkLabError):
    """Raised when an input lies outside the domain of an operation."""

    def __init__(
        self,
        message: str,
        code: ErrorCode = ErrorCode.SUPPORT_OUT_OF_RANGE,
        details: str | None = None,
        suggestion: str | None = None,
        context: ErrorContext | None = None,
    ):
        super().__init__(
            code=code,
            message=message,
            details=details,
            suggestion=suggestion,
            context=context,
        )


class HypothesisError(DomainError):
    """Raised when a lemma hypothesis fails; `clause` names the failing condition."""

    def __init__(self, clause: str, message: str, context: ErrorContext | None = None):
        self.clause = clause
        super().__init__(
            message=message,
            code=ErrorCode.HYPOTHESIS_VIOLATED,
            details=f"clause: {clause}",
            context=context,
        )


class BudgetError(DkkLabError):
    """Raised when an exact enumeration or dimension cap is exceeded."""

    def __init__(
        self,
        message: str,
        limit: int,
        requested: int,
        code: ErrorCode = ErrorCode.EXACT_CAP_EXCEEDED,
    ):
        self.limit = limit
        self.requested = requested
        super().__init__(
            code=code,
            message=message,
            details=f"requested {requested}, cap {limit}",
            suggestion="Use search mode or reduce the range",
            context=ErrorContext(
                operation="budget_check",
                parameters={"limit": limit, "requested": requested},
            ),
        )


class FitError(DkkLabError):
    """Raised when a growth fit is ill-posed."""

    def __init__(self, message: str, code: ErrorCode = ErrorCode.DEGENERATE_ABSCISSAS):
        super().__init__(code=code, message=message)


class VerificationError(DkkLabError):
    """Raised when a stored witness no longer reproduces its value."""

    def __init__(self, message: str, details: str | None = None):
        super().__init__(code=ErrorCode.WITNESS_MISMATCH, message=message, details=details)


class InternalError(DkkLabError):
    """Raised on conditions that shipped objects should never produce."""

    def __init__(self, message: str, code: ErrorCode = ErrorCode.INTERNAL_ERROR):
        super().__init__(code=code, message=message)


def get_user_friendly_message(error: Exception) -> str:
    """Get a user-friendly message for any exception.

    Args:
        error: Exception to convert

    Returns:
        User-friendly error message
    """
    if isinstance(error, DkkLabError):
        return error.to_user_message()

    return f"An unexpected error occurred: {type(error).__name__}"
