"""Exception types shared by all curvforge modules."""

from __future__ import annotations


class CurvforgeError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(CurvforgeError):
    """Operands do not share a common dimension."""


class DegenerateMetricError(CurvforgeError):
    """A scalar product matrix is singular (or not symmetric)."""


class SingularMatrixError(CurvforgeError):
    """Exact inversion of a singular matrix was requested."""


class PreconditionError(CurvforgeError):
    """An operation was called outside its stated domain (null vector
    where a nonnull one is required, unverified tensor, and so on)."""


class FamilyDomainError(CurvforgeError):
    """An operator family was evaluated on a vector outside its domain."""


class AxiomRejectionError(CurvforgeError):
    """A family failed the hypothesis checks that gate reconstruction.

    ``hypothesis`` names the first violated condition; ``witnesses``
    carries replayable counterexamples.
    """

    def __init__(self, hypothesis, witnesses=(), report=None):
        self.hypothesis = hypothesis
        self.witnesses = tuple(witnesses)
        self.report = report
        super().__init__(f"family rejected: hypothesis '{hypothesis}' violated")


class StructuralError(CurvforgeError):
    """Exact data contradicts a structural assumption (mismatched
    eigenvalue multisets, choice-dependent null extension, ...)."""


class IrrationalSpectrumError(CurvforgeError):
    """An exact-only operation met a characteristic polynomial that does
    not split over the rationals."""


class ValidationError(CurvforgeError):
    """A structure specification violates one of its invariants; the
    message names the violated condition."""


class SchemaError(CurvforgeError):
    """A JSON payload does not match the expected schema."""
