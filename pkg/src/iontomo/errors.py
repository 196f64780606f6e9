"""Exception types raised across the package."""


class TomographyError(Exception):
    """Base class for all errors raised by iontomo."""


class NotHermitian(TomographyError, ValueError):
    pass


class BadDimension(TomographyError, ValueError):
    pass


class BadCutoff(TomographyError, ValueError):
    pass


class CutoffExceeded(TomographyError):
    """Population leaked into the highest retained Fock level."""


class NegativeTime(TomographyError, ValueError):
    pass


class MissingCoefficient(TomographyError, KeyError):
    pass


class MissingObservable(TomographyError, KeyError):
    pass


class IncompleteSettings(TomographyError, ValueError):
    pass


class DuplicateSetting(TomographyError, ValueError):
    pass


class DegenerateProjection(TomographyError, ValueError):
    """The input has no positive spectral part to project onto."""


class BootstrapDegenerate(TomographyError):
    """Too many bootstrap trials failed to reconstruct."""


class ConfigError(TomographyError, ValueError):
    pass


class NotConverged(TomographyError, RuntimeWarning):
    """Issued as a warning when the likelihood maximisation hits its iteration cap."""
