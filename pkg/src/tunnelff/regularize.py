"""Regularization fields: d_x theta, theta, V-tilde, and parameter derivatives.

theta solves d_x(phibar^2 d_x theta) = -(m/hbar) d_R phibar^2 and is taken
zero at the base point c.  Parameter derivatives use central finite
differences (5-point, Richardson grade) with one-sided stencils near the
admitted range edges.  Derivatives of theta itself use a wider step:
theta is built on top of an inner finite difference, so differencing it
at the inner step would amplify roundoff.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import numerics, stationary
from .errors import NodeError
from .potentials import DoubleDeltaBarrier, FreeParticle
from .units import HBAR, MASS

INNER_STEP = 1e-5   # first derivatives of solution fields in R
OUTER_STEP = 5e-3   # derivatives of theta-quantities in R
J_STEP = 1e-6       # coefficient amplitude/phase differences for closed-form J


@dataclass
class DensityDerivative:
    """d_R phibar^2 on the grid, with a flag for one-sided edge stencils."""

    values: np.ndarray
    one_sided: bool


@dataclass
class RegularizedFields:
    grid: np.ndarray
    dtheta_dx: np.ndarray
    theta: np.ndarray
    c: float
    R: float
    k: float
    segments: list
    vtilde: np.ndarray = None
    _theta_int: numerics.CumulativeIntegral = None

    def theta_at(self, x):
        """theta evaluated at arbitrary points inside the grid."""
        return self._theta_int(x, base=self.c)


def _solve_aligned(model, k, r, grid, reference_eta):
    sol = stationary.solve(model, k, r, grid)
    eta = stationary.align_phase(sol.eta, reference_eta)
    return sol.phibar ** 2, eta


def d_dR_density(model, k, r, grid, dr=INNER_STEP, points=5, analytic=None):
    """d_R of phibar^2 on the grid.

    ``analytic=True`` uses exact coefficient derivatives (double delta
    only); the default picks the analytic route when available.  The FD
    route falls back to one-sided stencils at the admitted range edges
    and flags the result.
    """
    if analytic is None:
        analytic = isinstance(model, (DoubleDeltaBarrier, FreeParticle))
    if analytic:
        if isinstance(model, FreeParticle):
            return DensityDerivative(np.zeros_like(np.asarray(grid, float)), False)
        if not isinstance(model, DoubleDeltaBarrier):
            raise TypeError("analytic density derivative needs a double-delta model")
        vals = double_delta_density_dGamma(grid, k, r, model.a, model.h_min,
                                           model.h_max)
        return DensityDerivative(vals, False)
    offs = numerics.stencil_offsets(r, dr, model.r_min, model.r_max, points)
    sol0 = stationary.solve(model, k, r, grid)
    stack = []
    for off in offs:
        if off == 0:
            stack.append(sol0.phibar ** 2)
        else:
            rho, _ = _solve_aligned(model, k, r + off * dr, grid, sol0.eta)
            stack.append(rho)
    deriv = numerics.stencil_derivative(offs, np.array(stack), dr)
    return DensityDerivative(deriv, bool(offs[len(offs) // 2] != 0))


def eta_dR(model, k, r, grid, dr=INNER_STEP, points=5):
    """d_R of the unwrapped phase, branch-aligned across the stencil."""
    if isinstance(model, FreeParticle):
        return np.zeros_like(np.asarray(grid, float))
    offs = numerics.stencil_offsets(r, dr, model.r_min, model.r_max, points)
    sol0 = stationary.solve(model, k, r, grid)
    stack = []
    for off in offs:
        if off == 0:
            stack.append(sol0.eta)
        else:
            _, eta = _solve_aligned(model, k, r + off * dr, grid, sol0.eta)
            stack.append(eta)
    return numerics.stencil_derivative(offs, np.array(stack), dr)


def theta_fields(sol, dens_dR, c=0.0):
    """Build d_x theta and theta from a solution and its density derivative.

    d_x theta = -(m/hbar) (1/phibar^2) * int_c^x d_R phibar^2
    theta     = int_c^x d_x theta,  so theta(c) = 0.

    Cumulative quadrature is a cubic-spline antiderivative per smooth
    segment (4th order); raises NodeError below the amplitude floor.
    """
    values = dens_dR.values if isinstance(dens_dR, DensityDerivative) else dens_dR
    rho = sol.phibar ** 2
    if np.min(sol.phibar) <= 1e-13:
        raise NodeError("amplitude at the machine-safe floor; theta undefined")
    cum = numerics.CumulativeIntegral(sol.grid, values, sol.segments)
    dtheta = -(MASS / HBAR) * cum(sol.grid, base=c) / rho
    theta_int = numerics.CumulativeIntegral(sol.grid, dtheta, sol.segments)
    theta = theta_int(sol.grid, base=c)
    return RegularizedFields(grid=sol.grid, dtheta_dx=dtheta, theta=theta,
                             c=float(c), R=sol.R, k=sol.k,
                             segments=list(sol.segments), _theta_int=theta_int)


def vtilde_field(sol, fields, eta_dR_values):
    """V-tilde on the grid: -hbar d_R eta - (hbar^2/m) d_x eta d_x theta."""
    deta2 = sol.deta_dx()
    vt = -HBAR * eta_dR_values - (HBAR * HBAR / MASS) * deta2 * fields.dtheta_dx
    fields.vtilde = vt
    return vt


# ---------------------------------------------------------------------------
# Closed-form J integrals for the double delta barrier
# ---------------------------------------------------------------------------

def _dd_amp_phase(k, gamma, a, h_min, h_max):
    _, t_r, r_f, A, B = stationary.double_delta_coefficients(
        k, gamma, a, h_min, h_max)
    return (np.abs(A), np.angle(A), np.abs(B), np.angle(B),
            np.abs(r_f), np.angle(r_f), np.abs(t_r), np.angle(t_r))


def _dd_primitive(x, k, gamma, a, h_min, h_max):
    """int_0^x phibar^2 dx' expressed through coefficient amplitudes/phases.

    The interference term is absent for x > a where only the transmitted
    wave exists.
    """
    Ab, al, Bb, be, rb, ga, tb, _ = _dd_amp_phase(k, gamma, a, h_min, h_max)

    def center(xx):
        return ((Ab ** 2 + Bb ** 2) * xx
                + (2.0 * Ab * Bb / k) * np.sin(k * xx) * np.cos(k * xx + al - be))

    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    left, mid, right = stationary._double_delta_masks(x, a)
    out[mid] = center(x[mid])
    if np.any(left):
        xl = x[left]
        out[left] = center(-a) + (
            (1.0 + rb ** 2) * (xl + a)
            + (2.0 * rb / k) * np.sin(k * (xl + a)) * np.cos(k * (xl - a) - ga))
    if np.any(right):
        out[right] = center(a) + tb ** 2 * (x[right] - a)
    return out


def double_delta_J(x, gamma, k, a=1.0, h_min=1.0, h_max=2.0, dgamma=J_STEP):
    """J(x) = int_0^x d_Gamma phibar^2 dx', from the closed-form primitive.

    d_Gamma is taken as a central finite difference of the
    amplitude/phase primitive; one-sided at the range edges.
    """
    r_max = h_max - h_min
    offs = numerics.stencil_offsets(gamma, dgamma, 0.0, r_max, points=3)
    vals = np.array([
        _dd_primitive(x, k, gamma + off * dgamma, a, h_min, h_max)
        for off in offs])
    return numerics.stencil_derivative(offs, vals, dgamma)


def double_delta_density_dGamma(x, k, gamma, a=1.0, h_min=1.0, h_max=2.0):
    """Exact d_Gamma phibar^2 from analytic coefficient derivatives."""
    _, t_r, r_f, A, B = stationary.double_delta_coefficients(
        k, gamma, a, h_min, h_max)
    dt, dr, dA, dB = stationary.double_delta_coefficient_derivatives(
        k, gamma, a, h_min, h_max)
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    left, mid, right = stationary._double_delta_masks(x, a)
    out[left] = (2.0 * np.real(np.conj(r_f) * dr)
                 + 2.0 * np.real(dr * np.exp(-2j * k * x[left])))
    out[mid] = (2.0 * np.real(np.conj(A) * dA) + 2.0 * np.real(np.conj(B) * dB)
                + 2.0 * np.real((dA * np.conj(B) + A * np.conj(dB))
                                * np.exp(2j * k * x[mid])))
    out[right] = 2.0 * np.real(np.conj(t_r) * dt) * np.ones(np.sum(right))
    return out


# ---------------------------------------------------------------------------
# Per-(k, R) bundle of everything downstream modules need
# ---------------------------------------------------------------------------

class StationaryFrame:
    """All stationary and regularization fields at one (k, R).

    Construction is lazy: each derived field is computed on first access
    and cached.  Derivatives of theta in R use the wide outer step (see
    module docstring); everything else uses the inner step.
    """

    def __init__(self, model, k, r, grid=None, c=0.0,
                 dr_inner=INNER_STEP, dr_outer=OUTER_STEP):
        self.model = model
        self.k = float(k)
        self.r = float(r)
        self.grid = stationary.default_grid() if grid is None else np.asarray(grid, float)
        self.c = float(c)
        self.dr_inner = dr_inner
        self.dr_outer = dr_outer

    @cached_property
    def sol(self):
        return stationary.solve(self.model, self.k, self.r, self.grid)

    @cached_property
    def geometry(self):
        return self.model.geometry()

    @cached_property
    def density_dR(self):
        return d_dR_density(self.model, self.k, self.r, self.grid,
                            dr=self.dr_inner)

    @cached_property
    def density_dR_int(self):
        """Cumulative integral of d_R phibar^2 (evaluable anywhere)."""
        return numerics.CumulativeIntegral(self.grid, self.density_dR.values,
                                           self.sol.segments)

    @cached_property
    def fields(self):
        return theta_fields(self.sol, self.density_dR, c=self.c)

    @cached_property
    def deta_dx(self):
        return self.sol.deta_dx()

    @cached_property
    def eta_dR(self):
        return eta_dR(self.model, self.k, self.r, self.grid, dr=self.dr_inner)

    @cached_property
    def vtilde(self):
        return vtilde_field(self.sol, self.fields, self.eta_dR)

    def _theta_pair_at(self, r):
        """(d_x theta, theta) at a shifted parameter r (3-point inner FD)."""
        sol = stationary.solve(self.model, self.k, r, self.grid)
        dens = d_dR_density(self.model, self.k, r, self.grid,
                            dr=self.dr_inner, points=3)
        f = theta_fields(sol, dens, c=self.c)
        return f.dtheta_dx, f.theta

    @cached_property
    def _theta_dR_pair(self):
        offs = numerics.stencil_offsets(self.r, self.dr_outer,
                                        self.model.r_min, self.model.r_max, 5)
        dth_stack, th_stack = [], []
        for off in offs:
            if off == 0:
                dth_stack.append(self.fields.dtheta_dx)
                th_stack.append(self.fields.theta)
            else:
                dth, th = self._theta_pair_at(self.r + off * self.dr_outer)
                dth_stack.append(dth)
                th_stack.append(th)
        dth_R = numerics.stencil_derivative(offs, np.array(dth_stack), self.dr_outer)
        th_R = numerics.stencil_derivative(offs, np.array(th_stack), self.dr_outer)
        return dth_R, th_R

    @property
    def dtheta_dx_dR(self):
        return self._theta_dR_pair[0]

    @property
    def theta_dR(self):
        return self._theta_dR_pair[1]

    def theta_at(self, x):
        return self.fields.theta_at(x)

    def density_dR_integral(self, lo, hi):
        """int_lo^hi d_R phibar^2, Simpson with panels pinned to breakpoints."""
        return numerics.integrate(self.grid, self.density_dR.values, lo, hi,
                                  self.sol.segments)
