"""Independent oracles for the test suite.

The recursion oracle below is a deliberately monolithic, line-by-line
transliteration of the published C routines, kept structurally separate from
the packaged engine (which is built from composable operations plus a fast
inner-loop form).  The remaining oracles are textbook re-derivations:
bisection for Lambert W, adaptive quadrature for the integral constant, and
the alternating (eta) series for zeta on the critical strip.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _newdel_c(k, r, delta):
    tkr = 2.0 * k * r
    y = 2.0 * delta - (k - r) * (k - r + 1.0)
    if y < 0.0 and (2.0 * k / (tkr + y)) <= 1.0 / (k + 1.0):
        return delta * 2.0
    if 4.0 * y + 1.0 < 0.0:
        return delta * 2.0
    j = int(math.floor(min(0.5 * (3.0 + math.sqrt(4.0 * y + 1.0)), 9.0 * r / 10.0)))
    p = 1.0 / r
    for jj in range(j - 1, 0, -1):
        p = 0.5 / r + 0.5 * (1.0 - y / (tkr - 2.0 * r * jj)) * p
    return delta - k + 0.5 * p * (tkr - y)


@njit(cache=True)
def run_k_listing(k, program):
    """Transliterated main loop; returns (s, rho, theta) or (-1, nan, nan)."""
    kk = float(k)
    logk = math.log(kk)
    k3 = kk * kk * kk * logk
    om = 0.5
    for _ in range(10):
        om = 1.5 / (math.log(18.0 * k3 / om) - 1.5)
    eta = 1.0 + om
    logW = (kk + 1.0) * max(1.5 + 1.5 / om, math.log(18.0 / om * k3))
    if program == 1:
        del0 = 0.5 * kk * kk * (1.0 - 1.0 / kk)
        n = 1
    else:
        del0 = 0.4 * kk * kk
        n = int(math.ceil(0.1247 * kk))
    goal = 0.001 * kk * kk
    logH = 3.0 * kk * logk + (kk * kk - 4.0 * kk) * math.log(eta)
    logC = kk * logk
    while True:
        r0 = int(math.sqrt(kk * kk + kk - 2.0 * del0) + 0.5) - 2
        r1 = r0 + 4
        bestdel = kk * kk
        bestr = -1
        for r in range(r0, r1 + 1):
            del1 = _newdel_c(kk, float(r), del0)
            if del1 < bestdel:
                bestdel = del1
                bestr = r
        del1 = bestdel
        if del1 >= del0 and bestr < r0:
            return -1, math.nan, math.nan
        logC += max(logH + 4.0 * kk * n * math.log(eta), logW * (del0 - del1))
        if del1 <= goal:
            s = int((n + (del0 - goal) / (del0 - del1)) * kk + 1.0)
            return s, s / kk / kk, logC / k3
        del0 = del1
        n += 1


def sweep_listing(lam_lo, lam_hi, mu1=0.1905, mu2=0.1603, Y=288.0,
                  xi=3.612381, sigma=0.330201, goal=132.94357):
    """Transliterated parameter sweep; returns (maxex, maxcon).

    Follows the listing's selection flow, including its quirk of never
    updating the best-constant threshold (the last feasible candidate wins).
    """
    D = 0.1019 * Y
    bp = [lam_lo, lam_hi]
    i0 = int(lam_hi / (1.0 - mu1 - mu2)) + 10
    for i in range(1, i0 + 1):
        w = float(i)
        for v in (w * (1.0 - mu1), w * (1.0 - mu2),
                  (w - 0.000003) * (1.0 - mu1 - mu2)):
            if lam_lo < v < lam_hi:
                bp.append(v)
    bp.sort()

    def calc(lam, lam1, lam2, g, h, s, t):
        k = int(lam / (1.0 - mu1 - mu2) + 0.000003)
        kk = float(k)
        logk = math.log(kk)
        k2 = kk * kk
        rho, th = 3.20863, 2.17720
        if k <= 89999:
            rho, th = 3.205502, 1.77775
        if k <= 499:
            rho, th = 3.196497, 2.24352
        if k <= 339:
            rho, th = 3.192950, 2.33313
        if k <= 190:
            rho, th = 3.184127, 2.35334
        if k <= 170:
            rho, th = 3.181869, 2.37929
        if k <= 148:
            rho, th = 3.178871, 2.38259
        if k <= 146:
            rho, th = 3.178551, 2.39167
        if k <= 139:
            rho, th = 3.177527, 2.39529
        if k <= 137:
            rho, th = 3.177207, 2.40930
        r = int(rho * k2 + 1.0)
        rr, ss, gg, hh, tt = float(r), float(s), float(g), float(h), float(t)
        m1 = math.floor(lam / (1.0 - mu1))
        m2 = math.floor(lam / (1.0 - mu2))
        Z0 = 0.5 * ((m1 * m1 + m1) * (1.0 - mu1) + (m2 * m2 + m2) * (1.0 - mu2)
                    - hh * hh + hh - (1.0 - mu1 - mu2) * (gg * gg + gg))
        Z1 = hh + gg - m1 - m2 - 1.0
        H = Z0 + lam2 * Z1 if Z1 < 0.0 else Z0 + lam1 * Z1
        reta = xi * gg ** 1.5
        E1 = 0.001 * k2
        E2 = (0.5 * tt * (tt - 1.0) + hh * tt * math.exp(-ss / (hh * tt))
              + ss * ss / (2.0 * tt * reta))
        E3 = math.log(Y * lam1 * lam1) / (Y * lam1 ** 4)
        ex = (-E3 + (1.0 / (2.0 * rr * ss)) * (H - mu1 * E1 - mu2 * E2)) \
            * lam1 * lam1
        logC1 = th * k2 * kk * logk
        logC2 = (ss * ss / tt
                 + 10.5 * xi * xi * tt * gg * gg * math.log(gg) ** 2 / D
                 - ss * math.log(0.1 * reta)
                 * ((reta + hh) * (1.0 - 1.0 / hh) ** (ss / tt) - hh))
        logC3 = 1.0417 * reta * math.log(10.4167 * reta)
        logC = logC3 / rr + (4.65 * lam2 * math.log(lam2) + logC1 + logC2) \
            / (2.0 * rr * ss)
        return ex, math.exp(logC) + 1.0 / kk

    maxex = 0.0
    maxcon = 0.0
    for lam1, lam2 in zip(bp[:-1], bp[1:]):
        lam = 0.5 * (lam1 + lam2)
        g0 = int(lam / (1.0 - mu1) + 1.0)
        g1 = g0 + 1
        h1 = int(lam / (1.0 - mu2))
        h0 = h1 - 1
        bestg = -1
        besth = -1
        bests = -1
        bestcon = 1.0e40
        for g in range(g0, g1 + 1):
            for h in range(h0, h1 + 1):
                t = g - h + 1
                if g >= 100 and g <= 1.254 * lam1:
                    s = int(sigma * h * t + 1.0)
                    ex, con = calc(lam, lam1, lam2, g, h, s, t)
                    if ex > 0.0 and 1.0 / ex < goal and con < bestcon:
                        bestg, besth, bests = g, h, s
        if bestg < 0:
            return math.nan, math.nan
        t = bestg - besth + 1
        ex, con = calc(lam, lam1, lam2, bestg, besth, bests, t)
        maxex = max(maxex, 1.0 / ex)
        maxcon = max(maxcon, con)
    return maxex, maxcon


def lambert_bisect(x, lo=-1.0, hi=750.0, iters=200):
    """Bisection on w e^w = x; independent of the Halley implementation."""
    def f(w):
        return w + math.log(abs(w)) - math.log(abs(x)) if False else w * math.exp(w) - x
    a, b = lo, hi
    for _ in range(iters):
        m = 0.5 * (a + b)
        if f(m) > 0.0:
            b = m
        else:
            a = m
    return 0.5 * (a + b)


def gamma_43_series(terms=200):
    """Gamma(4/3) via the product formula, as an independent anchor for the
    y = 0 quadrature value."""
    # Gamma(z) = lim n! n^z / (z (z+1) ... (z+n))
    z = 4.0 / 3.0
    log_val = 0.0
    n = 200000
    for i in range(1, n + 1):
        log_val += math.log(i) - math.log(z + i)
    log_val += z * math.log(n) - math.log(z)
    return math.exp(log_val)


def eta_zeta(sigma, t, terms=None):
    """zeta via the alternating series and Borwein-style Chebyshev weights."""
    n = terms or 64
    # Borwein's d_k coefficients
    d = np.zeros(n + 1)
    acc = 0.0
    for i in range(n + 1):
        acc += (math.factorial(n + i - 1) * 4 ** i
                / (math.factorial(n - i) * math.factorial(2 * i)))
        d[i] = n * acc
    s = complex(sigma, t)
    total = 0.0 + 0.0j
    for k in range(n):
        total += ((-1) ** k) * (d[k] - d[n]) * np.exp(-s * math.log(k + 1))
    eta = -total / d[n]
    return eta / (1.0 - 2.0 ** (1.0 - s))
