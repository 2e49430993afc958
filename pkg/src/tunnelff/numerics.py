"""Grid numerics: high-order differences, segment-aware quadrature, stencils.

Piecewise-smooth fields (delta barriers) are handled through explicit
segment lists: every derivative or integral is evaluated per smooth
segment so that no stencil or interpolant straddles a kink.
"""

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.integrate import simpson

# 4th-order one-sided first-derivative stencils on 5 points
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


def gradient(y, dx, segments=None):
    """First derivative of grid samples, 4th order.

    Central 5-point stencil in the interior, one-sided 5-point stencils
    near segment ends.  ``segments`` is a list of (start, stop) index
    pairs (stop exclusive) covering smooth pieces; the value stored at a
    shared breakpoint is the one from the later segment.
    """
    y = np.asarray(y)
    out = np.empty_like(y)
    if segments is None:
        segments = [(0, len(y))]
    for i0, i1 in segments:
        s = y[i0:i1]
        if len(s) < 5:
            raise ValueError("segment too short for 4th-order differences")
        d = np.empty_like(s)
        d[2:-2] = (s[:-4] - 8.0 * s[1:-3] + 8.0 * s[3:-1] - s[4:]) / (12.0 * dx)
        d[0] = _EDGE0 @ s[:5] / dx
        d[1] = _EDGE1 @ s[:5] / dx
        d[-1] = -(_EDGE0 @ s[-5:][::-1]) / dx
        d[-2] = -(_EDGE1 @ s[-5:][::-1]) / dx
        out[i0:i1] = d
    return out


def laplacian_interior(y, dx):
    """Second derivative, 4th-order central; first/last two entries are zero."""
    y = np.asarray(y)
    out = np.zeros_like(y)
    out[2:-2] = (-y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2]
                 + 16.0 * y[3:-1] - y[4:]) / (12.0 * dx * dx)
    return out


class CumulativeIntegral:
    """Antiderivative of grid samples, evaluable at arbitrary points.

    Built from a cubic-spline antiderivative per smooth segment (error
    O(h^4)), chained so the result is continuous across breakpoints.
    Call with scalars or arrays inside [x[0], x[-1]].
    """

    def __init__(self, x, y, segments=None):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if segments is None:
            segments = [(0, len(x))]
        self._bounds = []
        self._anti = []
        offset = 0.0
        for i0, i1 in segments:
            sp = CubicSpline(x[i0:i1], y[i0:i1]).antiderivative()
            self._bounds.append((x[i0], x[i1 - 1]))
            self._anti.append((sp, offset - sp(x[i0])))
            offset = sp(x[i1 - 1]) + (offset - sp(x[i0]))
        self.x_min = x[0]
        self.x_max = x[-1]

    def _raw(self, pts):
        pts = np.atleast_1d(np.asarray(pts, dtype=float))
        out = np.empty_like(pts)
        for (lo, hi), (sp, off) in zip(self._bounds, self._anti):
            m = (pts >= lo) & (pts <= hi)
            if np.any(m):
                out[m] = sp(pts[m]) + off
        return out

    def __call__(self, pts, base=0.0):
        """Integral from ``base`` to each point in ``pts``."""
        vals = self._raw(pts) - self._raw(base)[0]
        if np.isscalar(pts) or np.ndim(pts) == 0:
            return float(vals[0])
        return vals


def integrate(x, y, lo, hi, segments=None):
    """Definite integral of grid samples with panels pinned to breakpoints.

    Composite Simpson per smooth segment restricted to [lo, hi]; ``lo``
    and ``hi`` must be grid points (within rounding).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if segments is None:
        segments = [(0, len(x))]
    ilo = grid_index(x, lo)
    ihi = grid_index(x, hi)
    sign = 1.0
    if ilo > ihi:
        ilo, ihi = ihi, ilo
        sign = -1.0
    total = 0.0
    for i0, i1 in segments:
        a = max(i0, ilo)
        b = min(i1 - 1, ihi)
        if b > a:
            total += simpson(y[a:b + 1], x=x[a:b + 1])
    return sign * total


def grid_index(x, value, tol=1e-9):
    """Index of ``value`` in the grid ``x``; the point must lie on the grid."""
    i = int(np.argmin(np.abs(x - value)))
    if abs(x[i] - value) > tol * max(1.0, abs(value)):
        raise ValueError(f"{value} is not a grid point (nearest {x[i]})")
    return i


def split_segments(x, breakpoints, tol=1e-9):
    """Segment index ranges for a grid cut at interior breakpoints.

    Each breakpoint must coincide with a grid point; the point is shared
    by both adjacent segments (fields are continuous, derivatives may
    jump).
    """
    idx = sorted(grid_index(x, b, tol) for b in breakpoints
                 if x[0] + tol < b < x[-1] - tol)
    edges = [0] + idx + [len(x) - 1]
    return [(edges[j], edges[j + 1] + 1) for j in range(len(edges) - 1)]


def stencil_offsets(value, step, lo, hi, points=5):
    """Symmetric FD stencil offsets kept inside [lo, hi].

    Returns integer multiples of ``step`` (length ``points``), centred
    when possible, shifted one-sided near a range edge.
    """
    half = points // 2
    shift = 0
    while (value + (shift - half) * step) < lo and shift < points:
        shift += 1
    while (value + (shift + half) * step) > hi and shift > -points:
        shift -= 1
    offs = np.arange(-half, half + 1) + shift
    if value + offs[0] * step < lo - 1e-15 or value + offs[-1] * step > hi + 1e-15:
        raise ValueError("parameter range too narrow for the FD stencil")
    return offs


def stencil_derivative(offsets, values, step):
    """First derivative at offset 0 from samples on ``offsets``*step.

    Fits the interpolating polynomial through the nodes; for the
    symmetric 5-point set this reduces to the Richardson-extrapolated
    central difference.
    """
    offsets = np.asarray(offsets, dtype=float)
    values = np.asarray(values)
    n = len(offsets)
    V = np.vander(offsets, n, increasing=True)
    e = np.zeros(n)
    e[1] = 1.0  # coefficient of the linear term = derivative at 0
    w = np.linalg.solve(V.T, e)
    return np.tensordot(w, values, axes=(0, 0)) / step
