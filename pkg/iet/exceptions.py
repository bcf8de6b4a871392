"""Error hierarchy shared by every rauzykit module.

Each error carries a machine-readable ``code``, the process ``exit_code``
used by the command-line runner, and a ``details`` mapping that is copied
verbatim into run records.
"""

from __future__ import annotations

from typing import Any, Dict, Optional

EXIT_SUCCESS = 0
EXIT_CONFIG_INVALID = 2
EXIT_PRECONDITION = 3
EXIT_NON_CONVERGENCE = 4
EXIT_IO = 5


class RauzyKitError(Exception):
    """Base class for toolkit errors."""

    code = "rauzykit-error"
    exit_code = EXIT_PRECONDITION

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


# Configuration ----------------------------------------------------------------


class ConfigInvalidError(RauzyKitError, ValueError):
    code = "config-invalid"
    exit_code = EXIT_CONFIG_INVALID


# Preconditions ----------------------------------------------------------------


class PreconditionError(RauzyKitError, ValueError):
    code = "precondition-violation"


class ReduciblePermutationError(PreconditionError):
    code = "reducible-permutation"


class ClosureViolationError(PreconditionError):
    code = "closure-violation"


class NonPositiveLengthError(PreconditionError):
    code = "nonpositive-length"


class OutOfDomainError(PreconditionError):
    code = "out-of-domain"


class TieError(PreconditionError):
    """Exact (or within tolerance) length coincidence during induction."""

    code = "tie"

    @property
    def step(self) -> Optional[int]:
        return self.details.get("step")


class KeaneFailureError(PreconditionError):
    code = "keane-failure"


class DegenerateLengthsError(PreconditionError):
    code = "degenerate-lengths"


class InsufficientPathError(PreconditionError):
    code = "insufficient-path"


class InsufficientLengthError(PreconditionError):
    code = "insufficient-length"


class OrthogonalityViolationError(PreconditionError):
    code = "orthogonality-violation"


class NonPositiveCoordinateError(PreconditionError):
    code = "nonpositive-coordinate"


class SingularMatrixError(PreconditionError):
    code = "singular-matrix"


class ZeroVectorError(PreconditionError):
    code = "zero-vector"


# Non-convergence --------------------------------------------------------------


class NonConvergenceError(RauzyKitError, RuntimeError):
    """Run ended without a result; ``trace`` holds the diagnostics seen so far."""

    code = "non-convergence"
    exit_code = EXIT_NON_CONVERGENCE

    def __init__(self, message: str, trace: Optional[list] = None, **details: Any) -> None:
        super().__init__(message, **details)
        self.trace = list(trace or [])


class CapExceededError(NonConvergenceError):
    code = "cap-exceeded"


class MaxStepsExceededError(NonConvergenceError):
    code = "max-steps-exceeded"


class ValidationFailureError(NonConvergenceError):
    code = "validation-failure"


class CocycleOverflowError(NonConvergenceError):
    code = "cocycle-overflow"


# I/O ----------------------------------------------------------------------------


class ReportIOError(RauzyKitError, OSError):
    code = "io-failure"
    exit_code = EXIT_IO


__all__ = [
    "EXIT_SUCCESS",
    "EXIT_CONFIG_INVALID",
    "EXIT_PRECONDITION",
    "EXIT_NON_CONVERGENCE",
    "EXIT_IO",
    "RauzyKitError",
    "ConfigInvalidError",
    "PreconditionError",
    "ReduciblePermutationError",
    "ClosureViolationError",
    "NonPositiveLengthError",
    "OutOfDomainError",
    "TieError",
    "KeaneFailureError",
    "DegenerateLengthsError",
    "InsufficientPathError",
    "InsufficientLengthError",
    "OrthogonalityViolationError",
    "NonPositiveCoordinateError",
    "SingularMatrixError",
    "ZeroVectorError",
    "NonConvergenceError",
    "CapExceededError",
    "MaxStepsExceededError",
    "ValidationFailureError",
    "CocycleOverflowError",
    "ReportIOError",
]
