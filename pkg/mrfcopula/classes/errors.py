"""
@fileoverview This module defines the error hierarchy raised by the library and
              mapped to exit codes by the command-line front end.
@filepath mrfcopula/classes/errors.py
"""

from enum import Enum
from typing import Any, Dict


class ErrorCode(str, Enum):
    """
    Machine-readable error codes carried by every MRFError.
    """
    EMPTY_ROW = "EmptyRow"
    DIMENSION_MISMATCH = "DimensionMismatch"
    NON_POSITIVE_SHAPE = "NonPositiveShape"
    INVALID_FACTOR_ID = "InvalidFactorId"
    INVALID_FACTOR_KIND = "InvalidFactorKind"
    INDEX_OUT_OF_RANGE = "IndexOutOfRange"
    DUPLICATE_INDEX = "DuplicateIndex"
    EQUAL_INDICES = "EqualIndices"
    INVALID_PARAMETER = "InvalidParameter"
    DIVERGENT_SERIES = "DivergentSeries"
    NO_CONVERGENCE = "NoConvergence"
    INVALID_TOLERANCE = "InvalidTolerance"
    COORDINATE_OUT_OF_RANGE = "CoordinateOutOfRange"
    NEGATIVE_TIME = "NegativeTime"
    DOMAIN_ERROR = "DomainError"
    ZERO_COUNT = "ZeroCount"
    EMPTY_BATCH = "EmptyBatch"
    SUBSET_TOO_SMALL = "SubsetTooSmall"
    PRECONDITION_VIOLATED = "PreconditionViolated"
    QUADRATURE_FAILURE = "QuadratureFailure"
    DEGENERATE_GRID = "DegenerateGrid"
    INVALID_CONFIG = "InvalidConfig"
    MODEL_FILE_ERROR = "ModelFileError"
    OUTPUT_ERROR = "OutputError"


class MRFError(Exception):
    """
    Base error with a code, a human-readable message and free-form context.
    """
    exit_code = 2

    def __init__(self, code: ErrorCode, message: str, **context: Any) -> None:
        super().__init__(message)
        self.code = ErrorCode(code)
        self.message = message
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code.value,
            "message": self.message,
            "context": self.context,
        }

    def __str__(self) -> str:
        return f"[{self.code.value}] {self.message}"


class ValidationFailure(MRFError):
    """Invalid model, arguments or inputs."""
    exit_code = 2


class NumericalFailure(MRFError):
    """A series, recursion or quadrature failed to reach its tolerance."""
    exit_code = 3


class ArtifactIOError(MRFError):
    """Model file or output artifact could not be read or written."""
    exit_code = 4
