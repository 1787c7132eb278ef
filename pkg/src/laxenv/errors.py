"""Exception hierarchy shared by every module.

Each error carries the offending identifiers in ``ids`` so reports can name
them without parsing messages.
"""


class LaxEnvError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1

    def __init__(self, message, *ids):
        super().__init__(message)
        self.ids = tuple(ids)


class InputError(LaxEnvError):
    """Malformed or inconsistent input data."""

    exit_code = 2


class ValidationError(InputError):
    pass


class MissingComposite(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class UnitLawViolation(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class NotMonotone(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NonAssociativeComposition(ValidationError):
    pass


class UnitViolation(ValidationError):
    pass


class BadHom(ValidationError):
    pass


class EndpointMismatch(ValidationError):
    pass


class IncompatibleCospan(ValidationError):
    pass


class TruncationMismatch(ValidationError):
    pass


class TruncationTooSmall(ValidationError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = "" if line is None else " (line %d, column %d)" % (line, column or 1)
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnresolvedReference(InputError):
    pass


class UnknownSuite(InputError):
    pass


class SizeExceeded(LaxEnvError):
    """A configured size cap was breached."""

    exit_code = 3


class CapOverflow(SizeExceeded):
    """A composite in a capped envelope would exceed the string-length cap."""


class MissingAdjunction(LaxEnvError):
    pass


class HypothesisFailed(LaxEnvError):
    """A precondition of a constructive check does not hold."""


class NotAPullback(HypothesisFailed):
    pass


class CounitNotInvertible(HypothesisFailed):
    pass


class NoLift(LaxEnvError):
    pass


class FiberAdjointMissing(HypothesisFailed):
    pass


class NotOverBase(HypothesisFailed):
    pass
