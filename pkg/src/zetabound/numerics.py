"""Shared numeric kernels: Lambert W, a semi-infinite quadrature, and the
supremum search used by the final-constant assembly.

The quadrature target is g(y) = e^{-2y^3} * integral_0^inf e^{3y^2 u - u^3} du,
whose supremum over y >= 0 enters the constant 1.0875034.  The integrand is
entire with cubic decay, so a truncated composite Gauss-Legendre rule with an
explicit tail bound reaches absolute error well below 1e-8.
"""

from __future__ import annotations

import math

import numpy as np

_INV_E = math.exp(-1.0)

# Gauss-Legendre nodes shared by all panels.
_GL_ORDER = 200
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
_N_PANELS = 10


def lambert_w0(x: float) -> float:
    """Principal branch W(x) solving w*e^w = x, for x >= -1/e.

    Halley iteration from a piecewise initial guess: square-root expansion
    near the branch point, a Pade-flavored series near 0, and log - loglog
    for large arguments.  Converges to relative error below 1e-14.
    """
    if x < -_INV_E:
        raise ValueError("lambert_w0 requires x >= -1/e, got %r" % (x,))
    if x == 0.0:
        return 0.0
    if x < -_INV_E + 1e-300:
        return -1.0
    if x < -0.25:
        # branch-point expansion: W = -1 + p - p^2/3 + ... with p = sqrt(2(ex+1))
        p = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
    elif x < 1.0:
        w = x * (1.0 - x + 1.5 * x * x) / (1.0 + 0.5 * x)
    else:
        lx = math.log(x)
        llx = math.log(lx) if lx > 1.0 else 0.0
        w = lx - llx + llx / lx if lx > 1.0 else lx
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if abs(wp1) < 1e-12:
            # at the branch point the update degenerates; w = -1 is exact there
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        dw = f / denom
        w -= dw
        if abs(dw) <= 1e-16 * (1.0 + abs(w)):
            break
    return w


def _upper_cutoff(y: float) -> float:
    """u* with 3y^2 u - u^3 <= 2y^3 - 50 for u >= u*, i.e. integrand below
    e^-50 of its peak value e^{2y^3}."""
    # peak of the exponent is 2y^3 at u = y; march right until 50 below peak
    u = y + 1.0
    while 3.0 * y * y * u - u ** 3 > 2.0 * y ** 3 - 50.0:
        u += 1.0
    return u


def g_of_y(y: float, n_panels: int = _N_PANELS) -> float:
    """e^{-2y^3} * integral_0^inf e^{3y^2 u - u^3} du.

    Composite Gauss-Legendre on [0, u*] with the e^{-2y^3} damping folded
    into the exponent for stability.  Tail bound: for u >= u* the exponent
    derivative is <= -(3u*^2 - 3y^2) < 0, so the tail is at most
    e^{f(u*)} / (3u*^2 - 3y^2), which is below 1e-20 by choice of u*.
    """
    if y < 0.0:
        raise ValueError("g_of_y requires y >= 0")
    hi = _upper_cutoff(y)
    edges = np.linspace(0.0, hi, n_panels + 1)
    total = 0.0
    shift = -2.0 * y ** 3
    for a, b in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        u = mid + half * _GL_NODES
        total += half * float(np.sum(_GL_WEIGHTS * np.exp(
            shift + 3.0 * y * y * u - u ** 3)))
    return float(total)


def sup_g(grid_step: float = 1e-2, tol: float = 1e-10) -> tuple[float, float]:
    """Supremum of g over [0, 5]: coarse grid then golden-section refinement.

    Returns (argmax, value).  Raises if the coarse grid puts the maximum on
    the boundary of the scan range (no bracket).
    """
    ys = np.arange(0.0, 5.0 + grid_step, grid_step)
    vals = [g_of_y(float(y)) for y in ys]
    i = int(np.argmax(vals))
    if i == 0 or i == len(ys) - 1:
        raise RuntimeError("sup_g: maximum not bracketed inside [0, 5]")
    lo, hi = float(ys[i - 1]), float(ys[i + 1])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = g_of_y(c), g_of_y(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = g_of_y(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = g_of_y(d)
    ystar = 0.5 * (a + b)
    return ystar, g_of_y(ystar)
