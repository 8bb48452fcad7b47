"""Error types for cplanes.

Domain errors mean the input is mathematically outside an operation's
precondition. ``MalformedInputError`` means the input could not be parsed.
"""

from typing import Any, ClassVar


class CPlanesError(Exception):
    """Base class for domain errors raised by cplanes operations."""

    code: ClassVar[str] = "domain_error"

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_dict(self) -> dict[str, Any]:
        """Return the machine-readable error payload.

        Returns:
            Dictionary with the error code and its detail.
        """
        return {"error": self.code, "detail": {"message": self.message, **self.detail}}


class ZeroVectorError(CPlanesError):
    code = "zero_vector"


class NotNormalizedError(CPlanesError):
    code = "not_normalized"


class NotAProjectionError(CPlanesError):
    code = "not_a_projection"


class NotOneComplementedError(CPlanesError):
    code = "not_one_complemented"


class OneComplementedError(CPlanesError):
    code = "one_complemented"


class NBelowThresholdError(CPlanesError):
    code = "n_below_threshold"


class NotInHyperplaneError(CPlanesError):
    code = "not_in_hyperplane"


class WrongClassError(CPlanesError):
    code = "wrong_class"


class NotInC0Error(CPlanesError):
    code = "not_in_c0"


class ZeroLeadCoefficientError(CPlanesError):
    code = "zero_lead_coefficient"


class DegenerateWitnessError(CPlanesError):
    code = "degenerate_witness"


class NotInUnitBallError(CPlanesError):
    code = "not_in_unit_ball"


class DomainMismatchError(CPlanesError):
    code = "domain_mismatch"


class MalformedInputError(ValueError):
    """Raised when a JSON document or rational literal cannot be parsed."""
