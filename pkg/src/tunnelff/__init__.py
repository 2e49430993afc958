"""tunnelff: fast-forward control of 1D stationary tunneling states.

Synthesizes the electromagnetic driving fields that accelerate adiabatic
barrier control while preserving the instantaneous scattering state,
computes the resulting time-dependent transmission/reflection
coefficients, and verifies the construction with an independent PDE
propagation oracle.
"""

__version__ = "0.1.0"

from .errors import (ConfigError, DomainError, InvariantError, NoConvergence,
                     NodeError, ParameterError, PoleError, RangeError,
                     StabilityError, StepSizeError, ThresholdError,
                     TunnelFFError)
from .potentials import (BarrierGeometry, DoubleDeltaBarrier, EckartBarrier,
                         FreeParticle)
from .schedule import FFSchedule
from .stationary import (ScatteringSolution, eckart_transmission_closed,
                         numeric_scattering_oracle, solve, solve_double_delta,
                         solve_eckart, stationary_transport)
from .regularize import RegularizedFields, StationaryFrame
from .transport import TransportTrace, trace
from .tdse import FieldTable, PropagatorConfig, propagate, pde_residual
from .config import ScenarioConfig, emit_config, parse_config

__all__ = [
    "__version__",
    "BarrierGeometry", "DoubleDeltaBarrier", "EckartBarrier", "FreeParticle",
    "FFSchedule", "ScatteringSolution", "ScenarioConfig", "StationaryFrame",
    "RegularizedFields", "TransportTrace", "FieldTable", "PropagatorConfig",
    "eckart_transmission_closed", "numeric_scattering_oracle", "solve",
    "solve_double_delta", "solve_eckart", "stationary_transport", "trace",
    "propagate", "pde_residual", "emit_config", "parse_config",
    "TunnelFFError", "PoleError", "NoConvergence", "ParameterError",
    "RangeError", "ThresholdError", "NodeError", "DomainError",
    "StepSizeError", "StabilityError", "ConfigError", "InvariantError",
]
