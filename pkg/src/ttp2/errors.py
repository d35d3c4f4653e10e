"""Exception types shared across the package."""


class TTP2Error(Exception):
    """Base class for all package errors."""


class ParseError(TTP2Error):
    """Input text could not be parsed as a numeric matrix."""


class ShapeError(TTP2Error):
    """Matrix is not square or the team count is unusable."""


class MetricError(TTP2Error):
    """A metric invariant is violated; the message names a witness."""


class DomainError(TTP2Error):
    """Argument outside the documented domain of an operation."""


class UnsupportedError(TTP2Error):
    """Instance size not covered by the construction (n != 2 mod 4, or n < 10)."""


class ValidationError(TTP2Error):
    """An internally produced block violates a schedule constraint."""


class LedgerError(TTP2Error):
    """Games played before the last slot contradict the expected pattern."""


class LimitError(TTP2Error):
    """Search exceeded its node budget."""


class DegenerateError(TTP2Error):
    """Zero lower bound together with positive travel; input data is corrupt."""
