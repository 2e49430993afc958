"""Time scaling: magnification factor, advanced time, and control velocity.

The working variables are the limits v(t) and R(Lambda(t)) of the
combined scaling: a diverging magnification factor paired with a
vanishing parameter growth rate, their product held at the finite mean
velocity vbar.  Finite-magnification forms are retained for consistency
tests.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PROFILES = ("cosine", "uniform")


@dataclass(frozen=True)
class FFSchedule:
    """Control schedule: mean velocity, duration, profile, initial parameter."""

    vbar: float
    t_ff: float
    profile: str = "cosine"
    r0: float = 0.0

    def __post_init__(self):
        if self.t_ff <= 0.0:
            raise DomainError(f"duration must be positive, got {self.t_ff}")
        if self.profile not in PROFILES:
            raise DomainError(f"profile must be one of {PROFILES}")
        if self.vbar < 0.0:
            raise DomainError(f"mean velocity must be >= 0, got {self.vbar}")

    @property
    def r_final(self):
        return self.r0 + self.vbar * self.t_ff

    def v(self, t):
        """Control velocity v(t); zero after t_ff."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0):
            raise DomainError("t must be >= 0")
        if self.profile == "uniform":
            out = np.where(t <= self.t_ff, self.vbar, 0.0)
        else:
            out = np.where(t <= self.t_ff,
                           self.vbar * (1.0 - np.cos(2.0 * np.pi * t / self.t_ff)),
                           0.0)
        return float(out) if out.ndim == 0 else out

    def vdot(self, t):
        """Time derivative of the control velocity."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0):
            raise DomainError("t must be >= 0")
        if self.profile == "uniform":
            out = np.zeros_like(t)
        else:
            w = 2.0 * np.pi / self.t_ff
            out = np.where(t <= self.t_ff, self.vbar * w * np.sin(w * t), 0.0)
        return float(out) if out.ndim == 0 else out

    def r_of_t(self, t):
        """Accelerated control parameter R(Lambda(t)); clamps beyond t_ff."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0):
            raise DomainError("t must be >= 0")
        if self.profile == "uniform":
            ramp = self.vbar * np.minimum(t, self.t_ff)
        else:
            tc = np.minimum(t, self.t_ff)
            ramp = self.vbar * (tc - (self.t_ff / (2.0 * np.pi))
                                * np.sin(2.0 * np.pi * tc / self.t_ff))
        out = self.r0 + ramp
        return float(out) if out.ndim == 0 else out

    def times(self, n):
        """n + 1 uniformly spaced sample times covering [0, t_ff]."""
        return np.linspace(0.0, self.t_ff, n + 1)


def time_scaling(sched: FFSchedule, t, alpha_bar):
    """Finite-magnification pair (alpha(t), Lambda(t)) for 0 <= t <= t_ff."""
    t = float(t)
    if not (0.0 <= t <= sched.t_ff):
        raise DomainError(f"t = {t} outside [0, {sched.t_ff}]")
    if alpha_bar < 1.0:
        raise DomainError("mean magnification must be >= 1")
    if sched.profile == "uniform":
        return alpha_bar, alpha_bar * t
    w = 2.0 * np.pi / sched.t_ff
    alpha = alpha_bar - (alpha_bar - 1.0) * np.cos(w * t)
    lam = alpha_bar * t - (alpha_bar - 1.0) * np.sin(w * t) / w
    return float(alpha), float(lam)


def v_of_t(sched: FFSchedule, t):
    return sched.v(t)


def r_of_t(sched: FFSchedule, t):
    return sched.r_of_t(t)
