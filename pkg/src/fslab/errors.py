"""Exception types shared across the package."""


class FslabError(Exception):
    """Base class for every error raised by fslab."""


class DomainError(FslabError):
    """Invalid class parameters, measures, or functional arguments."""


class NearSingular(FslabError):
    """Series division rejected: leading denominator coefficient below tolerance."""


class CaseRangeError(FslabError):
    """Extremal configuration requested outside its admissible parameter range."""


class ViolationError(FslabError):
    """A searched member exceeded the closed-form bound beyond tolerance."""
