"""Exception types shared across the package."""


class EtaPowersError(Exception):
    """Base class for library errors."""


class InsufficientLengthError(EtaPowersError, ValueError):
    """A truncated series was asked for coefficients it does not know."""


class FormulaError(EtaPowersError, AssertionError):
    """A closed form produced an impossible value (bad divisibility, wrong purity,
    missing representation). Signals a transcription bug, never bad input."""


class RootNumberError(EtaPowersError):
    """The smoothed L-value disagrees with the plain Abel-summed series."""


class UnknownLawError(EtaPowersError, KeyError):
    """No asymptotic law is registered for the requested (family, statistic)."""
