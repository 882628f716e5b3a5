"""Exception hierarchy shared by every uwbsim module."""


class UwbSimError(Exception):
    """Base class for all simulator errors."""


class ParameterError(UwbSimError, ValueError):
    """An argument violates a precondition (wrong range, wrong shape, ...)."""


class DegenerateInputError(UwbSimError, ValueError):
    """The input is structurally valid but carries no usable information."""


class DomainError(UwbSimError, ValueError):
    """A physical quantity has no solution for the given inputs."""


class DimensioningError(UwbSimError, ValueError):
    """A converter clock/band combination violates a sampling constraint."""


class RegisterRangeError(UwbSimError, ValueError):
    """A register write falls outside the 8-bit port range [0, 255]."""


class CommitError(UwbSimError, RuntimeError):
    """A staged register combination failed validation at commit time."""


class ReferenceLookupError(UwbSimError, KeyError):
    """Unknown (target, version) pair in the implementation reference data."""


class ConfigError(UwbSimError, ValueError):
    """An experiment config file is missing or inconsistent."""
