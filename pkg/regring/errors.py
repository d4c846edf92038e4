"""Exception hierarchy shared by the services and the command layer."""


class RegringError(Exception):
    """Base class for every error raised by regring."""


class DimensionMismatch(RegringError, ValueError):
    pass


class SpecMismatch(RegringError, ValueError):
    pass


class FormatError(RegringError, ValueError):
    """Malformed matrix, element or ring-spec text."""


class BudgetExceeded(RegringError):
    def __init__(self, cases, budget):
        super().__init__(f"{cases} cases exceed the enumeration budget of {budget}")
        self.cases = cases
        self.budget = budget


class NotAUnit(RegringError):
    pass


class NotIdempotent(RegringError):
    pass


class NotIso(RegringError):
    pass


class NotPerspective(RegringError):
    pass


class NotMutuallyReflexive(RegringError):
    pass


class TraceNotStabilized(RegringError):
    pass


class TraceTooShort(RegringError):
    pass


class IntervalViolation(RegringError):
    pass


class TermParseError(RegringError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundVariable(RegringError):
    pass


class TermMismatch(RegringError):
    """The two sides of an identity have different free variables."""


class VerificationFailed(RegringError):
    pass
