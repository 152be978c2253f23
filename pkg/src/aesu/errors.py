"""Exception types shared across the package.

Every operational failure mode has its own class so callers (and the CLI)
can react by type instead of parsing messages. All of them derive from
``AesuError``; the ones signalling bad arguments also derive from
``ValueError`` so idiomatic ``except ValueError`` still works.
"""

__all__ = [
    "AesuError",
    "AllZeroCounts",
    "InvalidOrder",
    "DegenerateInput",
    "DomainError",
    "TooFewPoints",
    "MissingRaterCount",
    "EmptyCorpus",
    "NoRecommendations",
    "InvalidWeights",
    "MalformedLine",
    "IoError",
    "NonFiniteValue",
]


class AesuError(Exception):
    """Base class for all package-specific errors."""


class AllZeroCounts(AesuError, ValueError):
    """A vote-count vector contained no votes at all."""


class InvalidOrder(AesuError, ValueError):
    """EMD order parameter r was below 1."""


class DegenerateInput(AesuError, ValueError):
    """A correlation was requested on data with zero variance."""


class DomainError(AesuError, ValueError):
    """Argument outside the mathematical domain of a special function."""


class TooFewPoints(AesuError, ValueError):
    """The dip statistic needs at least two sample points."""


class MissingRaterCount(AesuError, ValueError):
    """A histogram without a rater count cannot be expanded to a sample."""


class EmptyCorpus(AesuError, ValueError):
    """An operation over a corpus received no records."""


class NoRecommendations(AesuError):
    """A recommendation rule selected no images, so no ratio exists."""


class InvalidWeights(AesuError, ValueError):
    """Loss weights w1+w2+w3 do not sum to 1."""


class MalformedLine(AesuError, ValueError):
    """A corpus file line could not be parsed.

    ``line_no`` is 1-based when the line came from a file, or None for
    free-standing text.
    """

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no = line_no


class IoError(AesuError):
    """File could not be read or written (wraps the underlying OSError)."""


class NonFiniteValue(AesuError, ValueError):
    """A numerical evaluation produced NaN or infinity."""
