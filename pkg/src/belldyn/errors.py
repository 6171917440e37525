"""Exception types shared across the package."""


class BelldynError(Exception):
    """Base class for all belldyn errors."""


class InvalidStateError(BelldynError):
    """Density matrix violates hermiticity, trace, or positivity tolerances."""


class NonHermitianError(InvalidStateError):
    """Matrix is not Hermitian within tolerance."""


class InvalidSpectrumError(InvalidStateError):
    """Bell-diagonal spectrum is not a sorted probability vector."""


class InvalidKappaError(BelldynError):
    """Decoherence parameter magnitude exceeds 1."""


class NormalizationError(BelldynError):
    """Spectral weights or densities do not sum/integrate to 1."""


class UnderResolvedGridError(BelldynError):
    """Sampled spectrum is too coarse to resolve the oscillatory phase."""


class ScheduleError(BelldynError):
    """Polarization-exchange points are not strictly increasing and nonnegative."""


class NonConvergenceError(BelldynError):
    """Iterative refinement failed to reach the requested tolerance."""


class CrossingNotFoundError(BelldynError):
    """No sample pair brackets the requested level crossing."""


class SingularSystemError(BelldynError):
    """Measurement settings are not informationally complete."""


class EmptyRecordError(BelldynError):
    """Tomography record contains no settings."""


class ConfigError(BelldynError):
    """Base class for experiment-config problems."""


class ParseError(ConfigError):
    """Malformed config line."""


class UnknownKeyError(ConfigError):
    """Config key is not recognized."""


class MissingKeyError(ConfigError):
    """Required config key is absent."""
