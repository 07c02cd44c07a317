"""Final constant assembly (A, B, d, the multiplicative-variant constant)
and an independent Euler-Maclaurin zeta oracle that checks the published
|zeta| bound empirically on a desk-scale grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import sup_g
from .report import CheckReport

__all__ = [
    "BoundConstants", "PrecisionError",
    "constant_B", "constant_A", "small_t_chain", "pnt_constant_d",
    "m_variant_constant", "hurwitz_zeta", "verify_theorem2",
    "A_BOUND", "B_ROUNDUP", "D_TARGET", "DEFAULT_GRID",
]

A_BOUND = 70.6995
B_ROUNDUP = 4.43795
D_TARGET = 0.212579

T0_MAIN = 1e108
T0_M_VARIANT = 1e90

# small-t chain constants per regime
CONST_FLAT = 36.8
CONST_MID = 70.6199
CONST_LOW_SIGMA = 21.3
CONST_UNIFORM = 58.1


class PrecisionError(Exception):
    """Doubled-length evaluation disagrees beyond the requested target."""


@dataclass
class BoundConstants:
    """Final constant bundle; A, B, d are computed, never inputs."""

    C: float = 8.7979
    D: float = 132.94357
    t0: float = T0_MAIN
    c_asym: float = 48.0718
    c_expl: float = 54.004
    A: float = 0.0
    B: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        self.B = constant_B(self.D)
        self.A = constant_A(self.C, self.D, self.t0)
        self.d = pnt_constant_d(self.c_asym)


def constant_B(D: float) -> float:
    """B = (2/9) sqrt(3D)."""
    if D <= 0.0:
        raise ValueError("D must be positive")
    return (2.0 / 9.0) * math.sqrt(3.0 * D)


def constant_A(C: float, D: float, t0: float) -> float:
    """(C + 1 + 1e-80)/log^{2/3} t0 + 1.569 C D^{1/3}, decreasing in t0."""
    if C <= 0.0 or D <= 0.0 or t0 < 3.0:
        raise ValueError("need C, D > 0 and t0 >= 3")
    return (C + 1.0 + 1e-80) / math.log(t0) ** (2.0 / 3.0) + 1.569 * C * D ** (1.0 / 3.0)


def pnt_constant_d(c: float) -> float:
    """d = (5^6 / (2^2 3^4 c^3))^{1/5}."""
    if c <= 0.0:
        raise ValueError("c must be positive")
    return (5.0 ** 6 / (4.0 * 81.0 * c ** 3)) ** 0.2


def m_variant_constant(m: float, C: float, D: float, t0: float) -> float:
    """((m-1)C + 1 + 1e-77)/log^{2/3} t0 + 1.0875034 (m-1) C D^{1/3}/log m."""
    if not (1.0 < m <= 2.0):
        raise ValueError("m must lie in (1, 2]")
    if t0 < T0_M_VARIANT:
        raise ValueError("the multiplicative variant needs t0 >= 1e90")
    return (((m - 1.0) * C + 1.0 + 1e-77) / math.log(t0) ** (2.0 / 3.0)
            + 1.0875034 * (m - 1.0) * C * D ** (1.0 / 3.0) / math.log(m))


def small_t_chain(sigma: float, t: float) -> tuple[float, float]:
    """(bound on |zeta(sigma+it)|, certified case constant) for desk-scale t.

    Regimes: sigma >= 15/16 and 3 <= t <= 1e6 -> flat 36.8 (+1 recovers zeta
    itself from the shifted sum); sigma >= 15/16 and 1e6 <= t <= 1e108 ->
    70.6199 t^{4(1-sigma)^{3/2}} log^{2/3} t; 1/2 <= sigma <= 15/16, t >= 3
    -> 21.3 t^{4(1-sigma)^{3/2}}.
    """
    if not (0.5 <= sigma <= 1.0) or t < 3.0:
        raise ValueError("need 1/2 <= sigma <= 1 and t >= 3")
    if sigma < 15.0 / 16.0:
        return CONST_LOW_SIGMA * t ** (4.0 * (1.0 - sigma) ** 1.5), CONST_LOW_SIGMA
    if t <= 1e6:
        return CONST_FLAT + 1.0, CONST_FLAT
    if t <= T0_MAIN:
        return (CONST_MID * t ** (4.0 * (1.0 - sigma) ** 1.5)
                * math.log(t) ** (2.0 / 3.0), CONST_MID)
    raise ValueError("no chain case for sigma >= 15/16 with t > 1e108")


_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
              5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0)
_EM_TERMS = 6  # Bernoulli corrections used; the 7th drives the remainder
_CHUNK = 1 << 20


_TWO_PI_LD = np.longdouble("6.283185307179586476925286766559005768394")


def _head_sum(s: complex, u: float, N: int) -> complex:
    """Sum of (n+u)^{-s} for 0 <= n < N.

    The phase t*ln(n+u) reaches ~1e7 radians at the largest supported t, so
    it is formed and reduced mod 2*pi in 80-bit precision; plain float64
    phases would leave ~1e-9 noise per term and break the doubled-length
    agreement check.  Magnitudes stay in float64.
    """
    sigma, t = s.real, s.imag
    t_ld = np.longdouble(t)
    total = 0.0 + 0.0j
    for lo in range(0, N, _CHUNK):
        n = np.arange(lo, min(lo + _CHUNK, N), dtype=np.float64) + u
        log_n = np.log(n.astype(np.longdouble))
        phase = ((t_ld * log_n) % _TWO_PI_LD).astype(np.float64)
        mag = np.exp(-sigma * np.log(n))
        total += complex(float(np.sum(mag * np.cos(phase))),
                         -float(np.sum(mag * np.sin(phase))))
    return total


def _euler_maclaurin(s: complex, u: float, N: int) -> tuple[complex, float]:
    """(value, certified remainder magnitude) of the length-N evaluation."""
    head = _head_sum(s, u, N)
    x = N + u
    tail = x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s)
    poch = s
    for j in range(1, _EM_TERMS + 1):
        fact = math.factorial(2 * j)
        tail += (_BERNOULLI[j - 1] / fact) * poch * x ** (-s - (2 * j - 1))
        poch = poch * (s + (2 * j - 1)) * (s + 2 * j)
    j = _EM_TERMS + 1
    sigma = s.real
    remainder = (abs(_BERNOULLI[j - 1]) / math.factorial(2 * j)
                 * abs(poch) * x ** (-sigma - (2 * j - 1))
                 * abs(s + 2 * j - 1) / (sigma + 2 * j - 1))
    return head + tail, remainder


def hurwitz_zeta(sigma: float, t: float, u: float,
                 precision_target: float = 1e-10) -> complex:
    """zeta(sigma + it, u) by truncated sum plus Euler-Maclaurin corrections.

    The certified remainder must sit below the target and a doubled-length
    evaluation must agree within it, otherwise PrecisionError is raised.
    """
    if not (0.5 <= sigma <= 2.0):
        raise ValueError("sigma must lie in [1/2, 2]")
    if not (0.0 < u <= 1.0):
        raise ValueError("u must lie in (0, 1]")
    if t > 1e6:
        raise ValueError("t must be <= 1e6")
    if precision_target < 1e-10:
        raise ValueError("precision target below the supported 1e-10")
    s = complex(sigma, t)
    N = max(50, int(2.0 * t))
    val, rem = _euler_maclaurin(s, u, N)
    if rem > precision_target:
        raise PrecisionError("certified remainder %.3g above target" % rem)
    val2, _rem2 = _euler_maclaurin(s, u, 2 * N)
    if abs(val - val2) > precision_target:
        raise PrecisionError("doubled-length disagreement %.3g" % abs(val - val2))
    return val2


DEFAULT_GRID = tuple(
    (round(0.5 + 0.05 * i, 2), t)
    for i in range(11)
    for t in (3.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1e3, 3e3, 1e4, 3e4, 1e5, 3e5, 1e6))


def theorem2_bound(sigma: float, t: float) -> float:
    """Published |zeta| bound A t^{B(1-sigma)^{3/2}} log^{2/3} t."""
    return A_BOUND * t ** (B_ROUNDUP * (1.0 - sigma) ** 1.5) * math.log(t) ** (2.0 / 3.0)


def verify_theorem2(grid=None) -> list[CheckReport]:
    """Empirical check of the published bound and the per-case constants.

    Every grid point is checked against the headline A/B bound, the uniform
    58.1 bound, and the governing small-t chain case.  CSV rows for these
    reports carry (sigma, t, case) in the detail field.
    """
    grid = DEFAULT_GRID if grid is None else grid
    reports = []
    for sigma, t in grid:
        za = abs(hurwitz_zeta(sigma, t, 1.0))
        tag = "sigma=%g,t=%g" % (sigma, t)
        reports.append(CheckReport.upper(
            "zeta_headline[%s]" % tag, za, theorem2_bound(sigma, t),
            detail="case=headline"))
        uniform = CONST_UNIFORM * t ** (4.0 * (1.0 - sigma) ** 1.5) \
            * math.log(t) ** (2.0 / 3.0)
        reports.append(CheckReport.upper(
            "zeta_uniform58[%s]" % tag, za, uniform, detail="case=58.1"))
        bound, witness = small_t_chain(sigma, t)
        reports.append(CheckReport.upper(
            "zeta_case[%s]" % tag, za, bound, detail="case=%g" % witness))
        if sigma >= 15.0 / 16.0 and t >= 1e6:
            # the oracle tops out at t = 1e6, so the constant that takes over
            # beyond it is exercised at the hand-off point
            mid = (CONST_MID * t ** (4.0 * (1.0 - sigma) ** 1.5)
                   * math.log(t) ** (2.0 / 3.0))
            reports.append(CheckReport.upper(
                "zeta_mid_handoff[%s]" % tag, za, mid,
                detail="case=%g" % CONST_MID))
    return reports


def constant_checks() -> list[CheckReport]:
    """Assembly checks for B, A, d, the integral constant, and the
    multiplicative-variant constant."""
    consts = BoundConstants()
    reports = [
        CheckReport.within("constant_B_window", consts.B, 4.437945, 5e-6,
                           detail="must round up to %.5f" % B_ROUNDUP),
        CheckReport.upper("constant_A", consts.A, A_BOUND),
        CheckReport.within("pnt_constant_d", consts.d, D_TARGET, 1e-4),
    ]
    ystar, gstar = sup_g()
    reports.append(CheckReport.upper("integral_constant", gstar,
                                     1.0875034 + 1e-7,
                                     detail="argmax y=%.6f" % ystar))
    reports.append(CheckReport.within("integral_argmax", ystar, 0.710, 0.01))
    mv = m_variant_constant(1.001, consts.C, consts.D, T0_M_VARIANT)
    reports.append(CheckReport.within("m_variant_near_49", mv, 49.0, 1.0))
    return reports
