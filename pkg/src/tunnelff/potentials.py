"""Barrier models: parameterized potentials V0(x, R) and their geometry.

Every model exposes the regular part of the potential, its analytic
derivative with respect to the control parameter R, and the saturation
geometry (x1, x2, v0c, k_threshold): outside [x1, x2] the potential is
R-independent, so plane-wave matching there defines the scattering
coefficients.
"""

from dataclasses import dataclass

import numpy as np

from .errors import RangeError
from .units import HB2_OVER_2M


@dataclass(frozen=True)
class BarrierGeometry:
    x1: float
    x2: float
    v0c: float           # asymptotic constant on the right
    k_threshold: float   # minimum propagating wavenumber


@dataclass(frozen=True)
class EckartBarrier:
    """Smooth asymmetric step-plus-bump barrier with tunable bump height.

    V0(x, A) = (hbar^2/2m) [ e^{x/l}/(1+e^{x/l}) + A e^{x/l}/(1+e^{x/l})^2 ]

    The control parameter is the bump height A.  With l = 0.1 the
    potential saturates to its asymptotes within 1e-3 for |x| >= 1.
    """

    l: float = 0.1
    r_min: float = 0.0
    r_max: float = 10.0

    kind = "eckart"

    def check_r(self, r):
        if not (self.r_min <= r <= self.r_max):
            raise RangeError(
                f"A = {r} outside admitted range [{self.r_min}, {self.r_max}]")

    def v0(self, x, r):
        self.check_r(r)
        s = _logistic(np.asarray(x, dtype=float) / self.l)
        return HB2_OVER_2M * (s + r * s * (1.0 - s))

    def dv0_dr(self, x, r):
        self.check_r(r)
        s = _logistic(np.asarray(x, dtype=float) / self.l)
        return HB2_OVER_2M * s * (1.0 - s)

    def geometry(self):
        return BarrierGeometry(x1=-1.0, x2=1.0, v0c=HB2_OVER_2M, k_threshold=1.0)

    def breakpoints(self):
        return ()


@dataclass(frozen=True)
class DoubleDeltaBarrier:
    """Two delta barriers at +-a with counter-tuned strengths.

    Strengths (in units of hbar^2/2m) are h_min + G on the left and
    h_max - G on the right; the admitted range G in [0, h_max - h_min]
    keeps both non-negative.  The regular part of the potential is zero;
    the deltas enter only through derivative jump conditions, so v0
    returns 0 off the supports.
    """

    a: float = 1.0
    h_min: float = 1.0
    h_max: float = 2.0

    kind = "double_delta"

    @property
    def r_min(self):
        return 0.0

    @property
    def r_max(self):
        return self.h_max - self.h_min

    def check_r(self, r):
        if not (self.r_min <= r <= self.r_max):
            raise RangeError(
                f"Gamma = {r} outside admitted range [0, {self.r_max}]")

    def v0(self, x, r):
        self.check_r(r)
        return np.zeros_like(np.asarray(x, dtype=float))

    def dv0_dr(self, x, r):
        self.check_r(r)
        return np.zeros_like(np.asarray(x, dtype=float))

    def strengths(self, r):
        """Left and right delta strengths in units of hbar^2/2m."""
        self.check_r(r)
        return self.h_min + r, self.h_max - r

    def dstrengths_dr(self, r):
        self.check_r(r)
        return 1.0, -1.0

    def geometry(self):
        return BarrierGeometry(x1=-self.a, x2=self.a, v0c=0.0, k_threshold=0.0)

    def breakpoints(self):
        return (-self.a, self.a)


@dataclass(frozen=True)
class FreeParticle:
    """No barrier at all; trivial model used by verification paths."""

    r_min: float = 0.0
    r_max: float = 10.0

    kind = "free"

    def check_r(self, r):
        pass

    def v0(self, x, r):
        return np.zeros_like(np.asarray(x, dtype=float))

    def dv0_dr(self, x, r):
        return np.zeros_like(np.asarray(x, dtype=float))

    def geometry(self):
        return BarrierGeometry(x1=-1.0, x2=1.0, v0c=0.0, k_threshold=0.0)

    def breakpoints(self):
        return ()


def _logistic(u):
    """e^u / (1 + e^u) evaluated without overflow for any real u."""
    return np.exp(-np.logaddexp(0.0, -u))


def eckart_peak(model: EckartBarrier, r):
    """Position and height of the barrier maximum (defined for A > 1)."""
    if r <= 1.0:
        raise RangeError("the barrier maximum formula requires A > 1")
    x_m = model.l * np.log((r + 1.0) / (r - 1.0))
    v_m = HB2_OVER_2M * (1.0 + r) ** 2 / (4.0 * r)
    return x_m, v_m
