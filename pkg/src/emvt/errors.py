"""Exception types shared across the toolkit."""


class EmvtError(Exception):
    """Base class for all toolkit errors."""


class NonPrimeBase(EmvtError):
    """The base is not a prime greater than 2."""


class InadmissibleDigits(EmvtError):
    """After filtering to [0, p-1], the digit set is not of size 2..p-1."""


class EmptyProfile(EmvtError):
    """A representation profile with maxN < 1 cannot be ratio-fitted."""


class MemoryBudgetExceeded(EmvtError):
    """Predicted working-set size exceeds the configured memory budget."""


class OracleTooLarge(EmvtError):
    """The brute-force oracle would exceed its configured tuple-pair cap."""


class InvalidRange(EmvtError):
    """Digit-position range violates 0 <= c <= d <= D."""


class TooFewPoints(EmvtError):
    """An exponent fit needs at least three data points."""


class NonpositiveCount(EmvtError):
    """Log-log fitting requires strictly positive counts."""


class ConfigParseError(EmvtError):
    """A config file line could not be parsed (carries the line number)."""


class UnknownKey(EmvtError):
    """A config file key is not a recognized option."""


class UsageError(EmvtError):
    """Bad command-line invocation."""


class InvariantViolation(EmvtError):
    """An internal exact identity failed; indicates a bug, never bad input."""
