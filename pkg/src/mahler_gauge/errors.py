"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's domain (degree too small, zero polynomial, ...)."""


class HypothesisNotSatisfied(Exception):
    """The input does not meet a theorem's hypothesis (e.g. an unpaired large root).

    This is a property of the input, not a bug; the CLI maps it to exit code 3.
    """


class PrecisionError(RuntimeError):
    """A certified decision could not be reached below the precision cap."""
