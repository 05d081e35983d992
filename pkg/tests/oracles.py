"""Independent brute-force oracles shared by the test modules.

Everything here goes through generic numerics (adaptive quadrature,
finite differences, empirical ranks) and never through the code paths it
is used to check.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate


def integrate_positive_axis(f, upper, epsabs=1e-10, limit=200):
    """Adaptive quadrature of f over [0, upper] on the positive axis.

    Integrates in s = log(1+x) so the adaptive rule cannot miss a hump
    sitting near the origin of a huge interval; the integrand handed to
    QUADPACK is still f itself times the substitution Jacobian.
    """
    s_max = np.log1p(upper)
    val, _ = integrate.quad(
        lambda s: f(np.expm1(s)) * np.exp(s), 0.0, s_max, epsabs=epsabs, limit=limit
    )
    return val


def integrate_plane(f, upper_x, upper_y, epsabs=1e-8):
    """Adaptive double quadrature of f(x, y) over [0,Bx] x [0,By]."""
    sx = np.log1p(upper_x)
    sy = np.log1p(upper_y)

    def g(t, s):  # dblquad passes the inner variable first
        x = np.expm1(s)
        y = np.expm1(t)
        return f(x, y) * np.exp(s) * np.exp(t)

    val, _ = integrate.dblquad(g, 0.0, sx, 0.0, sy, epsabs=epsabs)
    return val


def unit_square_integral(f, epsabs=1e-12):
    """Adaptive double quadrature of f(u, v) over the unit square."""
    val, _ = integrate.dblquad(lambda v, u: f(u, v), 0.0, 1.0, 0.0, 1.0, epsabs=epsabs)
    return val


def central_diff(f, x, h):
    """First derivative of a scalar function by central differences."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


def mixed_second_diff(f, x, y, h):
    """d2 f / dx dy by the symmetric four-point stencil."""
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (
        4.0 * h * h
    )


def bisect_increasing(f, target, lo, hi, tol=1e-14, max_iter=200):
    """Solve f(x) = target for increasing f on [lo, hi] by pure bisection."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)
