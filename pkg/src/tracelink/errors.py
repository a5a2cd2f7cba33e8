"""Exception taxonomy shared by all tracelink modules."""


class TracelinkError(Exception):
    """Base class for every error raised by this package."""


class InvalidConfig(TracelinkError, ValueError):
    """A parameter or configuration value violates a precondition."""


class IndexOutOfRange(TracelinkError, IndexError):
    """A user or time index does not address the given data."""


class LengthMismatch(TracelinkError, ValueError):
    """Two vectors that must share a length do not."""


class TooLarge(TracelinkError, ValueError):
    """Input exceeds the size guard of an exhaustive algorithm."""


class NoMatch(TracelinkError):
    """No candidate fell within the acceptance threshold."""


class AmbiguousMatch(TracelinkError):
    """Two or more candidates fell within the acceptance threshold."""


class Unmatched(TracelinkError, KeyError):
    """The estimated permutation does not cover the requested user."""


class UnknownBound(TracelinkError, KeyError):
    """No bound validator is registered under the requested name."""
