"""Exception types shared across the package."""


class TunnelFFError(Exception):
    """Base class for all package errors."""


class PoleError(TunnelFFError):
    """Function evaluated at a pole (e.g. gamma at a non-positive integer)."""


class NoConvergence(TunnelFFError):
    """An iterative evaluation failed to reach the requested tolerance."""


class ParameterError(TunnelFFError):
    """Function parameters are outside the supported set."""


class RangeError(TunnelFFError):
    """Control parameter outside the admitted range of the barrier model."""


class ThresholdError(TunnelFFError):
    """Wavenumber at or below the propagation threshold of the model."""


class NodeError(TunnelFFError):
    """Amplitude fell below the machine-safe floor; solution is invalid."""


class DomainError(TunnelFFError):
    """Time argument outside the domain of a schedule operation."""


class StepSizeError(TunnelFFError):
    """Requested integration step is too coarse for the stated tolerance."""


class StabilityError(TunnelFFError):
    """Time propagation tripped the step-acceptance monitor."""


class ConfigError(TunnelFFError):
    """Scenario configuration is malformed or inconsistent."""


class InvariantError(TunnelFFError):
    """A run-time invariant check failed during scenario execution."""
