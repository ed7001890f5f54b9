"""Exception hierarchy shared across the package."""


class NLieError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(NLieError):
    """Raised when values tagged with different scalar fields are combined."""


class DimensionMismatchError(NLieError):
    """Raised when vector, matrix or algebra dimensions are incompatible."""


class ParseError(NLieError):
    """Raised on malformed input documents."""


class InvalidParameterError(NLieError):
    """Raised on out-of-range or inconsistent parameters."""


class NotAnIdealError(NLieError):
    """Raised when a series operation receives a subspace that is not an ideal."""


class FundamentalIdentityError(NLieError):
    """Raised when a constructor produces a table violating the fundamental identity.

    ``report`` carries the full checker output, including violating tuples.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedRequestError(NLieError):
    """Raised for requests the library deliberately does not support."""
