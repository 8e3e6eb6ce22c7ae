"""
Tests for the error module.
"""

from dkk_lab.error import (
    BudgetError,
    ConfigParseError,
    ConfigurationError,
    DkkLabError,
    DomainError,
    ErrorCategory,
    ErrorCode,
    ErrorContext,
    FitError,
    HypothesisError,
    InternalError,
    VerificationError,
    get_user_friendly_message,
)


class TestErrorCategories:
    """Test category mapping by code range."""

    def test_categories(self):
        assert ConfigurationError("x").category == ErrorCategory.CONFIGURATION
        assert DomainError("x").category == ErrorCategory.DOMAIN
        assert BudgetError("x", limit=1, requested=2).category == ErrorCategory.BUDGET
        assert FitError("x").category == ErrorCategory.FIT
        assert VerificationError("x").category == ErrorCategory.VERIFICATION
        assert InternalError("x").category == ErrorCategory.INTERNAL

    def test_hierarchy(self):
        assert issubclass(ConfigParseError, ConfigurationError)
        assert issubclass(HypothesisError, DomainError)
        assert issubclass(BudgetError, DkkLabError)


class TestErrorDetails:
    """Test error payloads."""

    def test_to_dict(self):
        error = DomainError(
            "bad index",
            code=ErrorCode.INDEX_OUT_OF_RANGE,
            context=ErrorContext(operation="compute_k_m", parameters={"m": 9}),
        )
        data = error.to_dict()
        assert data["code"] == 40105
        assert data["name"] == "INDEX_OUT_OF_RANGE"
        assert data["category"] == "DOMAIN"
        assert data["context"] == {"operation": "compute_k_m", "parameters": {"m": 9}}

    def test_parse_error_location(self):
        error = ConfigParseError("Input should be a valid number", line=3, field="run.seed")
        assert error.message == "Input should be a valid number (line 3, field 'run.seed')"
        assert error.context.parameters == {"line": 3, "field": "run.seed"}

    def test_hypothesis_clause(self):
        error = HypothesisError("cardinality", "|A| too large")
        assert error.clause == "cardinality"
        assert error.code == ErrorCode.HYPOTHESIS_VIOLATED
        assert error.details == "clause: cardinality"

    def test_budget_fields(self):
        error = BudgetError("too many", limit=20, requested=25)
        assert error.code == ErrorCode.EXACT_CAP_EXCEEDED
        assert error.details == "requested 25, cap 20"


class TestUserMessages:
    """Test user-facing messages."""

    def test_suggestion_appended(self):
        error = ConfigurationError("p must be at least 1", suggestion="Use p >= 1")
        assert get_user_friendly_message(error) == "p must be at least 1\n\nSuggestion: Use p >= 1"

    def test_unexpected_error(self):
        assert get_user_friendly_message(KeyError("x")) == "An unexpected error occurred: KeyError"
