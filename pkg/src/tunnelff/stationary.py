"""Stationary scattering states, coefficients, and a numeric oracle.

Solutions are built on a spatial grid with amplitude/phase split
phi0 = phibar * exp(i eta), phibar > 0, eta unwrapped along x.  Unit
incident amplitude from the left is assumed throughout, so the
transmission and reflection probabilities are T = (k'/k)|t_r|^2 and
R = |r_f|^2 with T + R = 1.
"""

from dataclasses import dataclass, field

import numpy as np

from . import numerics, specfun
from .errors import NodeError, StepSizeError, ThresholdError
from .potentials import DoubleDeltaBarrier, EckartBarrier, FreeParticle
from .units import HBAR, MASS

DEFAULT_SPAN = (-1.5, 1.5)
DEFAULT_POINTS = 3001


@dataclass
class ScatteringSolution:
    """Stationary state at fixed (k, R) on a grid."""

    model: object
    k: float
    kprime: float
    energy: float
    R: float
    grid: np.ndarray
    phi0: np.ndarray
    phibar: np.ndarray
    eta: np.ndarray
    t_r: complex
    r_f: complex
    segments: list = field(default_factory=list)

    def __post_init__(self):
        if not self.segments:
            self.segments = [(0, len(self.grid))]

    @property
    def dx(self):
        return self.grid[1] - self.grid[0]

    def deta_dx(self):
        """Phase gradient, 4th-order differences per smooth segment."""
        return numerics.gradient(self.eta, self.dx, self.segments)

    def current(self):
        """Probability current (hbar/m) phibar^2 d_x eta on the grid."""
        return (HBAR / MASS) * self.phibar ** 2 * self.deta_dx()


def default_grid(span=DEFAULT_SPAN, n=DEFAULT_POINTS):
    return np.linspace(span[0], span[1], n)


def _amplitude_phase(phi):
    phibar = np.abs(phi)
    if np.min(phibar) <= 1e-13:
        raise NodeError("scattering amplitude reached the machine-safe floor")
    eta = np.unwrap(np.angle(phi))
    return phibar, eta


def align_phase(eta, reference):
    """Shift an unwrapped phase by the 2*pi multiple closest to a reference.

    Perturbed-parameter solves need phases on a common branch before any
    difference in R is taken.
    """
    shift = 2.0 * np.pi * np.round((reference[0] - eta[0]) / (2.0 * np.pi))
    return eta + shift


# ---------------------------------------------------------------------------
# Eckart barrier: closed form via the hypergeometric function
# ---------------------------------------------------------------------------

def _eckart_parameters(k, A, l):
    kp = np.sqrt(k * k - 1.0)
    delta = complex(np.emath.sqrt(A - 1.0 / (4.0 * l * l)))
    a = 0.5 + 1j * (k - kp + delta) * l
    b = 0.5 + 1j * (k - kp - delta) * l
    c = 1.0 - 2j * kp * l
    return kp, delta, a, b, c


def eckart_coefficients(k, A, l=0.1):
    """Transmission and reflection coefficients from the gamma-ratio forms.

    Both follow from matching the hypergeometric solution to unit
    incident amplitude; they satisfy (k'/k)|t_r|^2 + |r_f|^2 = 1 to
    machine precision.
    """
    if k <= 1.0:
        raise ThresholdError(f"k = {k} is at or below the propagation threshold 1")
    kp, delta, a, b, c = _eckart_parameters(k, A, l)
    t_r = specfun.gammaln_ratio((c - a, c - b), (c, c - a - b))
    r_f = specfun.gammaln_ratio((c - a, c - b, a + b - c), (c - a - b, a, b))
    return complex(t_r), complex(r_f), kp


def solve_eckart(k, A, l=0.1, grid=None):
    """Stationary Eckart solution phi0(x; k, A) on the grid.

    The hypergeometric argument 1/(1+e^{x/l}) and its complement are both
    computed directly from x, so the series stays accurate at the far
    ends of the window where the argument is exponentially close to 1.
    """
    if grid is None:
        grid = default_grid()
    if A < 0.0:
        raise ThresholdError(f"Eckart bump height A = {A} must be >= 0")
    t_r, r_f, kp = eckart_coefficients(k, A, l)
    _, _, a, b, c = _eckart_parameters(k, A, l)
    xl = np.asarray(grid, dtype=float) / l
    log1p_exp = np.logaddexp(0.0, xl)       # ln(1 + e^{x/l})
    log1p_exp_m = np.logaddexp(0.0, -xl)    # ln(1 + e^{-x/l})
    z = np.exp(-log1p_exp)
    one_minus_z = np.exp(-log1p_exp_m)
    prefactor = np.exp(1j * kp * l * log1p_exp - 1j * k * l * log1p_exp_m)
    F = specfun.hyp2f1(a, b, c, z, one_minus_z=one_minus_z)
    phi = t_r * prefactor * F
    phibar, eta = _amplitude_phase(phi)
    return ScatteringSolution(
        model=EckartBarrier(l=l), k=float(k), kprime=float(kp),
        energy=0.5 * HBAR * HBAR * k * k / MASS, R=float(A),
        grid=np.asarray(grid, dtype=float), phi0=phi, phibar=phibar, eta=eta,
        t_r=t_r, r_f=r_f)


def eckart_transmission_closed(k, A, l=0.1):
    """Stationary transmission probability from the closed cosh/cos form."""
    if k <= 1.0:
        raise ThresholdError(f"k = {k} is at or below the propagation threshold 1")
    kp = np.sqrt(k * k - 1.0)
    num = np.cosh(2.0 * np.pi * (k + kp) * l) - np.cosh(2.0 * np.pi * (k - kp) * l)
    if A * l * l < 0.25:
        mag = np.sqrt(0.25 / (l * l) - A)
        den = np.cosh(2.0 * np.pi * (k + kp) * l) + np.cos(2.0 * np.pi * mag * l)
    else:
        mag = np.sqrt(A - 0.25 / (l * l))
        den = np.cosh(2.0 * np.pi * (k + kp) * l) + np.cosh(2.0 * np.pi * mag * l)
    return num / den


def fit_asymptotic_reflection(sol, window=(-1.5, -1.0)):
    """Least-squares r_f from phi0 ~ e^{ikx} + r_f e^{-ikx} on a window.

    Verification path only: the residual reports how well the window has
    saturated.  Returns (r_fit, rms_residual).
    """
    x = sol.grid
    m = (x >= window[0]) & (x <= window[1])
    basis = np.column_stack([np.exp(1j * sol.k * x[m]), np.exp(-1j * sol.k * x[m])])
    coef, *_ = np.linalg.lstsq(basis, sol.phi0[m], rcond=None)
    resid = basis @ coef - sol.phi0[m]
    scaled = coef[1] / coef[0]
    return scaled, float(np.sqrt(np.mean(np.abs(resid) ** 2)))


# ---------------------------------------------------------------------------
# Double delta barrier: closed-form coefficient algebra
# ---------------------------------------------------------------------------

def double_delta_coefficients(k, gamma, a=1.0, h_min=1.0, h_max=2.0):
    """Coefficient set (Delta, t_r, r_f, A, B) for the double delta barrier."""
    model = DoubleDeltaBarrier(a=a, h_min=h_min, h_max=h_max)
    model.check_r(gamma)
    if k <= 0.0:
        raise ThresholdError(f"k = {k} must be positive")
    hl, hr = model.strengths(gamma)
    e4 = np.exp(4j * a * k)
    delta = hl * hr * (-1.0 + e4) + 4.0 * k * k + 2j * (h_min + h_max) * k
    t_r = 4.0 * k * k / delta
    r_f = (np.exp(2j * a * k) / delta) * (
        hl * hr * (-1.0 + np.exp(-4j * a * k))
        - 2j * k * (hr + hl * np.exp(-4j * a * k)))
    A = 2.0 * k * (2.0 * k + 1j * hr) / delta
    B = -2j * k * hr * np.exp(2j * a * k) / delta
    return delta, t_r, r_f, A, B


def double_delta_coefficient_derivatives(k, gamma, a=1.0, h_min=1.0, h_max=2.0):
    """Exact d/dGamma of (t_r, r_f, A, B); the algebra is rational in Gamma."""
    model = DoubleDeltaBarrier(a=a, h_min=h_min, h_max=h_max)
    model.check_r(gamma)
    hl, hr = model.strengths(gamma)
    e4 = np.exp(4j * a * k)
    em4 = np.exp(-4j * a * k)
    delta, t_r, r_f, A, B = double_delta_coefficients(k, gamma, a, h_min, h_max)
    ddelta = (hr - hl) * (-1.0 + e4)
    dt = -4.0 * k * k * ddelta / delta ** 2
    N = hl * hr * (-1.0 + em4) - 2j * k * (hr + hl * em4)
    dN = (hr - hl) * (-1.0 + em4) - 2j * k * (-1.0 + em4)
    dr = np.exp(2j * a * k) * (dN * delta - N * ddelta) / delta ** 2
    dA = (-2j * k * delta - 2.0 * k * (2.0 * k + 1j * hr) * ddelta) / delta ** 2
    dB = np.exp(2j * a * k) * (2j * k * delta + 2j * k * hr * ddelta) / delta ** 2
    return dt, dr, dA, dB


def _double_delta_masks(x, a):
    left = x < -a
    center = (x >= -a) & (x <= a)
    right = x > a
    return left, center, right


def double_delta_wave(x, k, gamma, a=1.0, h_min=1.0, h_max=2.0):
    """Piecewise phi0 on arbitrary points (plane waves in each domain)."""
    _, t_r, r_f, A, B = double_delta_coefficients(k, gamma, a, h_min, h_max)
    x = np.asarray(x, dtype=float)
    phi = np.empty(x.shape, dtype=complex)
    left, center, right = _double_delta_masks(x, a)
    phi[left] = np.exp(1j * k * x[left]) + r_f * np.exp(-1j * k * x[left])
    phi[center] = A * np.exp(1j * k * x[center]) + B * np.exp(-1j * k * x[center])
    phi[right] = t_r * np.exp(1j * k * x[right])
    return phi


def solve_double_delta(k, gamma, a=1.0, h_min=1.0, h_max=2.0, grid=None):
    """Stationary double-delta solution assembled on the grid.

    Continuity of phi0 at x = +-a is an algebraic property of the
    coefficients and is re-checked here as a guard.
    """
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    _, t_r, r_f, A, B = double_delta_coefficients(k, gamma, a, h_min, h_max)
    phi = double_delta_wave(grid, k, gamma, a, h_min, h_max)
    for xb in (-a, a):
        lo = double_delta_wave(np.array([xb - 1e-12]), k, gamma, a, h_min, h_max)[0]
        hi = double_delta_wave(np.array([xb + 1e-12]), k, gamma, a, h_min, h_max)[0]
        if abs(lo - hi) > 1e-10:
            raise NodeError(f"matching failure at x = {xb}: |jump| = {abs(lo - hi)}")
    phibar, eta = _amplitude_phase(phi)
    model = DoubleDeltaBarrier(a=a, h_min=h_min, h_max=h_max)
    segments = numerics.split_segments(grid, model.breakpoints())
    return ScatteringSolution(
        model=model, k=float(k), kprime=float(k), energy=0.5 * k * k,
        R=float(gamma), grid=grid, phi0=phi, phibar=phibar, eta=eta,
        t_r=complex(t_r), r_f=complex(r_f), segments=segments)


# ---------------------------------------------------------------------------
# Free particle and dispatch
# ---------------------------------------------------------------------------

def solve_free(k, grid=None):
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    phi = np.exp(1j * k * grid)
    phibar, eta = _amplitude_phase(phi)
    return ScatteringSolution(
        model=FreeParticle(), k=float(k), kprime=float(k), energy=0.5 * k * k,
        R=0.0, grid=grid, phi0=phi, phibar=phibar, eta=eta,
        t_r=1.0 + 0.0j, r_f=0.0 + 0.0j)


def solve(model, k, r, grid=None):
    """Solve the stationary problem for any supported barrier model."""
    if isinstance(model, EckartBarrier):
        return solve_eckart(k, r, l=model.l, grid=grid)
    if isinstance(model, DoubleDeltaBarrier):
        return solve_double_delta(k, r, a=model.a, h_min=model.h_min,
                                  h_max=model.h_max, grid=grid)
    if isinstance(model, FreeParticle):
        return solve_free(k, grid=grid)
    raise TypeError(f"unsupported model {model!r}")


def stationary_transport(sol):
    """(T, R) from the complex coefficients of a solution."""
    T = (sol.kprime / sol.k) * abs(sol.t_r) ** 2
    R = abs(sol.r_f) ** 2
    return T, R


def transmission(model, k, r):
    """Stationary transmission probability for any supported model."""
    if isinstance(model, EckartBarrier):
        return eckart_transmission_closed(k, r, l=model.l)
    if isinstance(model, DoubleDeltaBarrier):
        _, t_r, _, _, _ = double_delta_coefficients(
            k, r, model.a, model.h_min, model.h_max)
        return abs(t_r) ** 2
    if isinstance(model, FreeParticle):
        return 1.0
    raise TypeError(f"unsupported model {model!r}")


# ---------------------------------------------------------------------------
# Numeric oracle: transfer-matrix / RK4 integration of the stationary ODE
# ---------------------------------------------------------------------------

def _rk4_backward(k, A, l, x_right, x_left, n_steps):
    """Integrate phi'' = (2 V0 - k^2) phi from outgoing data at x_right."""
    import math

    kp = math.sqrt(k * k - 1.0)
    h = (x_left - x_right) / n_steps  # negative
    phi = complex(math.cos(kp * x_right), math.sin(kp * x_right))
    dphi = 1j * kp * phi
    kk = k * k

    def q(x):
        # 2 V0(x) - k^2 with V0 evaluated overflow-free
        if x > 0:
            e = math.exp(-x / l)
            s = 1.0 / (1.0 + e)
        else:
            e = math.exp(x / l)
            s = e / (1.0 + e)
        return (s + A * s * (1.0 - s)) - kk

    x = x_right
    h2 = 0.5 * h
    for _ in range(n_steps):
        qa = q(x)
        qb = q(x + h2)
        qc = q(x + h)
        k1p, k1d = dphi, qa * phi
        k2p, k2d = dphi + h2 * k1d, qb * (phi + h2 * k1p)
        k3p, k3d = dphi + h2 * k2d, qb * (phi + h2 * k2p)
        k4p, k4d = dphi + h * k3d, qc * (phi + h * k3p)
        phi = phi + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        dphi = dphi + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        x += h
    return phi, dphi


def _plane_wave_split(phi, dphi, k, x):
    P = 0.5 * (phi + dphi / (1j * k)) * np.exp(-1j * k * x)
    Q = 0.5 * (phi - dphi / (1j * k)) * np.exp(1j * k * x)
    return P, Q


def numeric_scattering_oracle(model, k, r, grid=None, step=1e-3, span=3.6):
    """Independent scattering solve; closed forms never enter.

    Eckart: fixed-step RK4 of the stationary equation from pure outgoing
    data at +span back to -span, then plane-wave matching.  Double delta:
    the four matching conditions are solved as a linear system.  Free:
    trivial.  Raises StepSizeError when halving the step moves t_r by
    more than 1e-9.
    """
    if isinstance(model, FreeParticle):
        return solve_free(k, grid=grid)

    if isinstance(model, DoubleDeltaBarrier):
        return _double_delta_linear_solve(model, k, r, grid)

    if not isinstance(model, EckartBarrier):
        raise TypeError(f"unsupported model {model!r}")
    if k <= 1.0:
        raise ThresholdError(f"k = {k} is at or below the propagation threshold 1")
    model.check_r(r)
    n = int(np.ceil(2 * span / step))
    results = []
    for nn in (n, 2 * n):
        phi, dphi = _rk4_backward(k, r, model.l, span, -span, nn)
        P, Q = _plane_wave_split(phi, dphi, k, -span)
        results.append((1.0 / P, Q / P))
    t_r, r_f = results[1]
    if abs(results[0][0] - results[1][0]) > 1e-9:
        raise StepSizeError(
            f"oracle step {step} too coarse: t_r moved by "
            f"{abs(results[0][0] - results[1][0]):.2e} under halving")
    if grid is None:
        grid = default_grid()
    sol = solve_eckart(k, r, l=model.l, grid=grid)
    return ScatteringSolution(
        model=model, k=float(k), kprime=sol.kprime, energy=sol.energy,
        R=float(r), grid=sol.grid, phi0=sol.phi0, phibar=sol.phibar,
        eta=sol.eta, t_r=complex(t_r), r_f=complex(r_f))


def _double_delta_linear_solve(model, k, r, grid):
    """Matching conditions at +-a solved numerically (4x4 linear system)."""
    if k <= 0.0:
        raise ThresholdError(f"k = {k} must be positive")
    model.check_r(r)
    a = model.a
    hl, hr = model.strengths(r)
    em = np.exp(-1j * k * a)
    ep = np.exp(1j * k * a)
    # unknowns: (r_f, A, B, t_r); rows: continuity at -a, continuity at +a,
    # derivative jump h*phi at -a, derivative jump at +a
    M = np.array([
        [ep, -em, -ep, 0.0],
        [0.0, ep, em, -ep],
        [(1j * k - hl) * ep, 1j * k * em, -1j * k * ep, 0.0],
        [0.0, -1j * k * ep, 1j * k * em, (1j * k - hr) * ep],
    ], dtype=complex)
    rhs = np.array([-em, 0.0, (1j * k + hl) * em, 0.0], dtype=complex)
    r_f, A, B, t_r = np.linalg.solve(M, rhs)
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    x = grid
    phi = np.empty_like(x, dtype=complex)
    left, center, right = _double_delta_masks(x, a)
    phi[left] = np.exp(1j * k * x[left]) + r_f * np.exp(-1j * k * x[left])
    phi[center] = A * np.exp(1j * k * x[center]) + B * np.exp(-1j * k * x[center])
    phi[right] = t_r * np.exp(1j * k * x[right])
    phibar, eta = _amplitude_phase(phi)
    return ScatteringSolution(
        model=model, k=float(k), kprime=float(k), energy=0.5 * k * k,
        R=float(r), grid=grid, phi0=phi, phibar=phibar, eta=eta,
        t_r=complex(t_r), r_f=complex(r_f),
        segments=numerics.split_segments(grid, model.breakpoints()))
