"""
Custom exceptions for the application
"""

from typing import Any, Iterable, Optional, Tuple


EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_RUNTIME_FAILURE = 2


class BaseOptimizationException(Exception):
    """Base exception class for custom exceptions"""
    def __init__(
        self,
        exit_code: int,
        detail: Any = None,
    ) -> None:
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail


class ConfigurationException(BaseOptimizationException):
    """Exception raised for invalid experiment or algorithm configuration"""
    def __init__(self, detail: Any = "Invalid configuration"):
        super().__init__(exit_code=EXIT_CONFIG_ERROR, detail=detail)


class ValidationException(BaseOptimizationException):
    """Exception raised for invalid arguments to an operation"""
    def __init__(self, detail: Any = "Validation error"):
        super().__init__(exit_code=EXIT_CONFIG_ERROR, detail=detail)


class DimensionMismatchException(ValidationException):
    """Exception raised when a vector length does not match the problem dimension"""
    def __init__(self, expected: int, actual: int):
        super().__init__(detail=f"Dimension mismatch: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class NonFiniteValueException(ValidationException):
    """Exception raised for NaN or infinite inputs"""
    def __init__(self, detail: str = "Non-finite value"):
        super().__init__(detail=detail)


class UnsupportedProblemException(ConfigurationException):
    """Exception raised for an unsupported (structure, base function) combination"""
    def __init__(self, structure: str, base: str, valid: Iterable[Tuple[str, str]]):
        matrix = ", ".join(f"({s}, {b})" for s, b in valid)
        super().__init__(
            detail=f"Unsupported combination ({structure}, {base}). Valid: {matrix}"
        )


class GroupingException(ValidationException):
    """Exception raised when a partition of variables is invalid"""
    def __init__(self, detail: str = "Invalid grouping"):
        super().__init__(detail=detail)


class InteractionDetectionException(BaseOptimizationException):
    """Exception raised when a pairwise interaction test produces a non-finite value"""
    def __init__(self, i: int, j: int):
        super().__init__(
            exit_code=EXIT_RUNTIME_FAILURE,
            detail=f"Non-finite interaction delta for variables ({i}, {j})"
        )
        self.pair = (i, j)


class BudgetExhaustedException(BaseOptimizationException):
    """Exception raised when the evaluation budget runs out"""
    def __init__(self, budget: int, requested: int = 1):
        super().__init__(
            exit_code=EXIT_RUNTIME_FAILURE,
            detail=f"Evaluation budget of {budget} exhausted ({requested} requested)"
        )
        self.budget = budget


class RuntimeFailureException(BaseOptimizationException):
    """Exception raised when a run fails at runtime"""
    def __init__(self, detail: str = "Runtime failure"):
        super().__init__(exit_code=EXIT_RUNTIME_FAILURE, detail=detail)


class ArtifactIOException(RuntimeFailureException):
    """Exception raised when result artifacts cannot be read or written"""
    def __init__(self, detail: str = "Artifact I/O failure"):
        super().__init__(detail=detail)


class InsufficientDataException(RuntimeFailureException):
    """Exception raised when there is nothing to aggregate"""
    def __init__(self, detail: str = "No run records found"):
        super().__init__(detail=detail)


def exit_code_for(error: Optional[BaseException]) -> int:
    """Map an exception (or None) to a CLI exit code"""
    if error is None:
        return EXIT_OK
    if isinstance(error, BaseOptimizationException):
        return error.exit_code
    return EXIT_RUNTIME_FAILURE


__all__ = [
    "EXIT_OK",
    "EXIT_CONFIG_ERROR",
    "EXIT_RUNTIME_FAILURE",
    "BaseOptimizationException",
    "ConfigurationException",
    "ValidationException",
    "DimensionMismatchException",
    "NonFiniteValueException",
    "UnsupportedProblemException",
    "GroupingException",
    "InteractionDetectionException",
    "BudgetExhaustedException",
    "RuntimeFailureException",
    "ArtifactIOException",
    "InsufficientDataException",
    "exit_code_for",
]
