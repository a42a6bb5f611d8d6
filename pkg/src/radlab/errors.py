"""Exception types shared across the library."""


class RadlabError(Exception):
    """Base class for all library errors."""


class InvalidCoefficient(RadlabError):
    """Coefficient input is empty, negative, or not an exact number."""


class DimensionError(RadlabError):
    """Dimension mismatch or unsupported dimension."""


class InvalidThreshold(RadlabError):
    """Threshold multiplier out of range (negative, or zero where positive is required)."""


class ZeroNorm(RadlabError):
    """Operation requires a vector with positive norm."""


class ZeroEntry(RadlabError):
    """Operation requires strictly positive entries."""


class NonPositiveEntry(RadlabError):
    """Operation requires entries >= 1."""


class UseMitm(RadlabError):
    """Direct enumeration cap exceeded; use the meet-in-the-middle path."""


class TooLarge(RadlabError):
    """Input dimension exceeds the hard cap of this operation."""


class LemmaPreconditionViolated(RadlabError):
    """A documented precondition of a membership rule does not hold."""


class NoWitness(RadlabError):
    """A witness guaranteed by a proven rule was not found.

    This is a falsification event: it can only fire if the implementation
    or the rule itself is wrong, so it must never be swallowed.
    """


class ConjectureFalsified(RadlabError):
    """A search produced a value below a proven floor.

    Carries the offending report in ``args[0]``; treat as a stop-the-world
    event demanding manual inspection.
    """


class BudgetExceeded(RadlabError):
    """Requested enumeration is larger than the configured budget."""
