"""Exception types shared across the package.

Operations that can fail for a *mathematical* reason (not divisible, not
triangular, not an automorphism) return a sentinel value instead; exceptions
are reserved for violated preconditions and resource limits.
"""


class PlaneCurvesError(Exception):
    """Base class for all package errors."""


class ParseError(PlaneCurvesError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class MixedVariables(PlaneCurvesError):
    pass


class InvalidResultantInput(PlaneCurvesError):
    pass


class ConstantInput(PlaneCurvesError):
    pass


class DivisionByZero(PlaneCurvesError):
    pass


class DegenerateLinear(PlaneCurvesError):
    pass


class SearchBudgetExceeded(PlaneCurvesError):
    pass


class NotTriangularInput(PlaneCurvesError):
    pass


class DegenerateCurve(PlaneCurvesError):
    pass


class InvalidFamilySpec(PlaneCurvesError):
    pass


class BadIndex(PlaneCurvesError):
    pass


class VerificationFailed(PlaneCurvesError):
    pass


class BudgetExhausted(PlaneCurvesError):
    pass
