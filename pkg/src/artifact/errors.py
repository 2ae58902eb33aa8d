"""Exception hierarchy. The CLI maps the two families onto exit codes."""

from __future__ import annotations


class ArtifactError(Exception):
    exit_code = 1


class InputError(ArtifactError, ValueError):
    """Bad or inconsistent input data."""

    exit_code = 3


class InvariantViolation(ArtifactError, AssertionError):
    """A computed object failed a structural check."""

    exit_code = 2


class NonCoprime(InputError):
    pass


class OutOfRange(InputError):
    pass


class NotNegativeDefinite(InputError):
    pass


class NotSelfConjugate(InputError):
    pass


class NotEventuallyIncreasing(InputError):
    pass


class NegativeExponent(InputError):
    pass


class RingMismatch(InputError):
    pass


class NonIntegral(InvariantViolation):
    pass


class CardinalityMismatch(InvariantViolation):
    pass


class NonIntegralWeight(InvariantViolation):
    pass


class NonTermination(InvariantViolation):
    pass


class WeightDrift(InvariantViolation):
    pass


class InhomogeneousDifferential(InvariantViolation):
    pass


class NotReflective(InvariantViolation):
    pass


class DegreeCapExceeded(InvariantViolation):
    pass


class TheoremViolated(InvariantViolation):
    pass


class DegreePieceTooLarge(InvariantViolation):
    pass


class IdentityFails(InvariantViolation):
    pass


class GoldenMismatch(InvariantViolation):
    pass
