"""Partial-sum bound engine: lambda-interval decomposition, the per-interval
parameter optimizer, the closed-form large-lambda verification, auxiliary
product/moment formulas, and a brute-force oracle for the bound itself.

The sweep splits [84, 220] at every point where one of the floor quantities
m1 = floor(lam/(1-mu1)), m2 = floor(lam/(1-mu2)), k = floor(lam/(1-mu1-mu2))
changes, optimizes the (g, h, s) witness on each interval, and reduces to the
global maxima of the exponent denominator u and the constant C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .report import CheckReport

__all__ = [
    "OptimizerConfig", "LambdaInterval", "LargeLambdaParams", "SweepResult",
    "InfeasibleInterval", "EvalOutcome",
    "breakpoints", "rho_theta_lookup", "make_interval", "interval_eval",
    "optimize_interval", "sweep", "large_lambda_check", "f_large",
    "wj_bound", "incomplete_system_bound", "snt_bruteforce", "snt_bound",
    "HypothesisViolation", "SNT_CONSTANT", "SNT_DENOM",
]

SNT_CONSTANT = 8.7979
SNT_DENOM = 132.94357

# k/lambda tends to 1/(1-mu1-mu2) = 1/0.6492 as lambda grows; the two-sided
# bracket below tightens it for finite lambda.
K_OVER_LAMBDA_LIMIT = 1.0 / 0.6492


class InfeasibleInterval(Exception):
    """No (g, h, s) candidate on the interval meets the viability gates."""


class HypothesisViolation(Exception):
    """A smooth-system moment-bound hypothesis range is violated."""


@dataclass
class OptimizerConfig:
    """Sweep parameters; D is tied to Y exactly."""

    mu1: float = 0.1905
    mu2: float = 0.1603
    Y: float = 288.0
    D: float | None = None
    xi: float = 3.612381
    sigma: float = 0.330201
    goal_u: float = SNT_DENOM

    def __post_init__(self):
        if self.D is None:
            self.D = 0.1019 * self.Y
        if not (0.0 < self.mu2 < self.mu1 < 1.0):
            raise ValueError("need 0 < mu2 < mu1 < 1")


@dataclass
class LambdaInterval:
    """One constancy interval with its optimizer witness."""

    lam1: float
    lam2: float
    m1: int
    m2: int
    k: int
    g: int = -1
    h: int = -1
    t: int = -1
    s: int = -1
    r: int = -1
    u: float = math.nan
    C: float = math.nan
    feasible: bool = False

    @property
    def lam_mid(self) -> float:
        return 0.5 * (self.lam1 + self.lam2)


@dataclass
class EvalOutcome:
    """Result of evaluating one (g, h, s) candidate on an interval."""

    u: float
    C: float
    viable: bool
    e_prime: float


@dataclass
class LargeLambdaParams:
    """Instantiation of the closed-form large-lambda check.

    gamma/phi default to the corner of the stated box; k0/k1 default to the
    k/lambda limit 1/0.6492 (lam=None).  A finite lam instead instantiates
    the two-sided bracket k0 = limit - 0.999997/lam, k1 = limit + 0.000003/lam.
    """

    rho: float = 3.20863
    sigma: float = 0.3299
    gamma: float = 1.17928 + 1.0 / 440.0
    phi: float = 1.24788 - 1.0 / 440.0
    mu1: float = 0.1905
    mu2: float = 0.1603
    lam: float | None = None

    def __post_init__(self):
        if abs(self.gamma - 1.17928) > 1.0 / 440.0 + 1e-15:
            raise ValueError("gamma outside the stated box")
        if abs(self.phi - 1.24788) > 1.0 / 440.0 + 1e-15:
            raise ValueError("phi outside the stated box")

    @property
    def k0(self) -> float:
        if self.lam is None:
            return K_OVER_LAMBDA_LIMIT
        return K_OVER_LAMBDA_LIMIT - 0.999997 / self.lam

    @property
    def k1(self) -> float:
        if self.lam is None:
            return K_OVER_LAMBDA_LIMIT
        return K_OVER_LAMBDA_LIMIT + 0.000003 / self.lam


@dataclass
class SweepResult:
    max_c: float
    max_u: float
    intervals: list = field(default_factory=list)
    binding: LambdaInterval | None = None


def breakpoints(lam_lo: float, lam_hi: float,
                cfg: OptimizerConfig | None = None) -> list[float]:
    """Ascending break values where a floor quantity changes on (lam_lo, lam_hi),
    plus the endpoints, deduplicated at 1e-12."""
    cfg = cfg or OptimizerConfig()
    if not (80.0 < lam_lo < lam_hi < 300.0):
        raise ValueError("lambda range must satisfy 80 < lo < hi < 300")
    pts = [lam_lo, lam_hi]
    i_max = int(lam_hi / (1.0 - cfg.mu1 - cfg.mu2)) + 10
    for i in range(1, i_max + 1):
        w = float(i)
        for v in (w * (1.0 - cfg.mu1), w * (1.0 - cfg.mu2),
                  (w - 0.000003) * (1.0 - cfg.mu1 - cfg.mu2)):
            if lam_lo < v < lam_hi:
                pts.append(v)
    pts.sort()
    out = [pts[0]]
    for v in pts[1:]:
        if v - out[-1] > 1e-12:
            out.append(v)
    return out


def rho_theta_lookup(k: int) -> tuple[float, float]:
    """Certified (rho, theta) for the degree bucket containing k."""
    if k < 129:
        raise ValueError("lookup starts at k = 129")
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
    return rho, th


def make_interval(lam1: float, lam2: float,
                  cfg: OptimizerConfig | None = None) -> LambdaInterval:
    """Partial interval with its constant floor quantities."""
    cfg = cfg or OptimizerConfig()
    lam = 0.5 * (lam1 + lam2)
    k = int(lam / (1.0 - cfg.mu1 - cfg.mu2) + 0.000003)
    m1 = int(math.floor(lam / (1.0 - cfg.mu1)))
    m2 = int(math.floor(lam / (1.0 - cfg.mu2)))
    return LambdaInterval(lam1=lam1, lam2=lam2, m1=m1, m2=m2, k=k)


def interval_eval(iv: LambdaInterval, g: int, h: int, s: int,
                  cfg: OptimizerConfig | None = None) -> EvalOutcome:
    """Exponent denominator u and constant C for one (g, h, s) candidate.

    The exponent deficit E' = E3 - (H' - mu1*E1 - mu2*E2)/(2rs) must be
    negative; then u = -1/(E' * lam1^2).  Viability additionally requires
    u strictly below the goal.  Non-viability is reported, never raised.
    """
    cfg = cfg or OptimizerConfig()
    t = g - h + 1
    if t < 1:
        raise ValueError("need t = g - h + 1 >= 1")
    kk = float(iv.k)
    k2 = kk * kk
    rho, th = rho_theta_lookup(iv.k)
    r = int(rho * k2 + 1.0)
    lam1, lam2 = iv.lam1, iv.lam2
    gg, hh, ss, tt, rr = float(g), float(h), float(s), float(t), float(r)
    m1, m2 = float(iv.m1), float(iv.m2)
    z0 = 0.5 * ((m1 * m1 + m1) * (1.0 - cfg.mu1) + (m2 * m2 + m2) * (1.0 - cfg.mu2)
                - hh * hh + hh - (1.0 - cfg.mu1 - cfg.mu2) * (gg * gg + gg))
    z1 = hh + gg - m1 - m2 - 1.0
    hprime = z0 + (lam2 * z1 if z1 < 0.0 else lam1 * z1)
    reta = cfg.xi * gg ** 1.5
    e1 = 0.001 * k2
    e2 = (0.5 * tt * (tt - 1.0) + hh * tt * math.exp(-ss / (hh * tt))
          + ss * ss / (2.0 * tt * reta))
    e3 = math.log(cfg.Y * lam1 * lam1) / (cfg.Y * lam1 ** 4)
    e_prime = e3 - (hprime - cfg.mu1 * e1 - cfg.mu2 * e2) / (2.0 * rr * ss)
    logc1 = th * k2 * kk * math.log(kk)
    logc2 = (ss * ss / tt
             + 10.5 * cfg.xi * cfg.xi * tt * gg * gg * math.log(gg) ** 2 / cfg.D
             - ss * math.log(0.1 * reta)
             * ((reta + hh) * (1.0 - 1.0 / hh) ** (ss / tt) - hh))
    logc3 = 1.0417 * reta * math.log(10.4167 * reta)
    logc = logc3 / rr + (4.65 * lam2 * math.log(lam2) + logc1 + logc2) / (2.0 * rr * ss)
    c = math.exp(logc) + 1.0 / kk
    if e_prime < 0.0:
        u = -1.0 / (e_prime * lam1 * lam1)
        viable = u < cfg.goal_u
    else:
        u = math.inf
        viable = False
    return EvalOutcome(u=u, C=c, viable=viable, e_prime=e_prime)


def optimize_interval(iv: LambdaInterval, cfg: OptimizerConfig | None = None,
                      wide_s: bool = False) -> LambdaInterval:
    """Complete the interval with the min-C viable witness.

    Candidates: g in {m1+1, m1+2}, h in {m2-1, m2}, s = floor(sigma*h*t) + 1
    (or the wide window [h(t-1)/4, ht/2] when wide_s), gated by the g-window
    100 <= g <= 1.254*lam1.
    """
    cfg = cfg or OptimizerConfig()
    best: tuple[EvalOutcome, int, int, int] | None = None
    for g in (iv.m1 + 1, iv.m1 + 2):
        if g < 100 or g > 1.254 * iv.lam1:
            continue
        for h in (iv.m2 - 1, iv.m2):
            t = g - h + 1
            if t < 1:
                continue
            if wide_s:
                s_candidates = range(h * (t - 1) // 4, h * t // 2 + 1)
            else:
                s_candidates = (int(cfg.sigma * h * t + 1.0),)
            for s in s_candidates:
                if s < 1:
                    continue
                out = interval_eval(iv, g, h, s, cfg)
                if out.viable and (best is None or out.C < best[0].C):
                    best = (out, g, h, s)
    if best is None:
        raise InfeasibleInterval("no viable witness on [%.6f, %.6f]"
                                 % (iv.lam1, iv.lam2))
    out, g, h, s = best
    rho, _th = rho_theta_lookup(iv.k)
    r = int(rho * iv.k * iv.k + 1.0)
    return replace(iv, g=g, h=h, t=g - h + 1, s=s, r=r,
                   u=out.u, C=out.C, feasible=True)


def sweep(lam_lo: float = 84.0, lam_hi: float = 220.0,
          cfg: OptimizerConfig | None = None, wide_s: bool = False) -> SweepResult:
    """Optimize every constancy interval and reduce to the global maxima."""
    cfg = cfg or OptimizerConfig()
    bps = breakpoints(lam_lo, lam_hi, cfg)
    intervals = []
    max_c = -math.inf
    max_u = -math.inf
    binding = None
    for a, b in zip(bps[:-1], bps[1:]):
        iv = optimize_interval(make_interval(a, b, cfg), cfg, wide_s)
        intervals.append(iv)
        if iv.C > max_c:
            max_c = iv.C
        if iv.u > max_u:
            max_u = iv.u
            binding = iv
    return SweepResult(max_c=max_c, max_u=max_u, intervals=intervals,
                       binding=binding)


def f_large(p: LargeLambdaParams) -> float:
    """Closed-form deficit slope f(gamma, phi) of the large-lambda regime."""
    gamma, phi = p.gamma, p.phi
    h2 = (phi + gamma - gamma * gamma / 2.0
          - ((1.0 - p.mu1 - p.mu2) / 2.0) * phi * phi
          - (2.0 - p.mu1 - p.mu2) / (2.0 * (1.0 - p.mu1) * (1.0 - p.mu2)))
    return (1.0 / (2.00002 * p.sigma * gamma)) * (
        0.001 * p.mu1 / (phi - gamma)
        + (1.0 / (p.k1 * p.k1)) * (-h2 / (phi - gamma)
                                   + 1.00001 * p.mu2 * (0.5 * (phi - gamma)
                                                        + gamma * math.exp(-p.sigma))))


F_CORNER_BOUND = -0.024287046496
G1_BOUND = 0.0008
G2_BOUND = 0.0213552


def large_lambda_check(p: LargeLambdaParams | None = None) -> list[CheckReport]:
    """The four closed-form inequalities of the large-lambda regime.

    f and the final chain are evaluated at `p` (default: the k/lambda limit
    instantiation); G1 uses the conservative lam=220 bracket, where it still
    passes.  Known discrepancy: the published corner value for f is about
    5e-10 below what the printed formula yields under any instantiation, so
    the f and final-chain rows fail by that hair; see the project ledger.
    """
    p = p or LargeLambdaParams()
    fval = f_large(p)
    tag = "lam=%s" % ("limit" if p.lam is None else ("%g" % p.lam))
    reports = [CheckReport.upper(
        "large_lambda_f_corner[%s]" % tag, fval, F_CORNER_BOUND,
        detail="computed %.12f" % fval)]
    conservative = LargeLambdaParams(rho=p.rho, sigma=p.sigma, gamma=p.gamma,
                                     phi=p.phi, mu1=p.mu1, mu2=p.mu2, lam=220.0)
    g1 = p.mu2 * p.sigma * p.gamma * p.phi ** -1.5 / (24.0 * conservative.k0 ** 2)
    reports.append(CheckReport.upper("large_lambda_G1[lam=220]", g1, G1_BOUND))
    gamma_lo = 1.17928 - 1.0 / 440.0
    g2 = 0.0392 / (2.00002 * p.sigma * gamma_lo * p.k0 ** 2)
    reports.append(CheckReport.upper("large_lambda_G2[%s]" % tag, g2, G2_BOUND))
    final = 0.0000473 + fval / p.rho
    reports.append(CheckReport.upper(
        "large_lambda_final_chain[%s]" % tag, final, -1.0 / SNT_DENOM,
        detail="0.0000473 + f/rho vs -1/%s" % SNT_DENOM))
    return reports


def wj_bound(j: int, s: float, r: float, M1: float, M2: float,
             N: float, t: float) -> float:
    """Per-factor product bound: min of the trivial and the refined branch."""
    if j < 1 or min(s, r, M1, M2, N, t) <= 0.0:
        raise ValueError("need j >= 1 and positive magnitudes")
    trivial = 2.0 * s * M2 ** j
    m1f = float(math.floor(M1))
    refined = (2.0 * s * M2 ** j / (r * m1f ** j)
               + s * t * M2 ** j / (math.pi * j * N ** j)
               + 4.0 * math.pi * j * (2.0 * N) ** j / (r * t * m1f ** j)
               + 2.0)
    return min(trivial, refined)


def incomplete_system_bound(g: int, h: int, s: int, t: int, log_p: float,
                            eta: float, d: float) -> tuple[float, float]:
    """Smooth-system moment bound (logA, E) with hypothesis validation.

    The degree parameter is g; log_p is the natural log of the sample size
    (the hypothesis needs log_p >= d*g^2, far beyond float range as a raw
    power).
    """
    k = g
    if k < 60:
        raise HypothesisViolation("degree %d < 60" % k)
    if not (0.9 * k <= h <= k - 2):
        raise HypothesisViolation("h=%d outside [0.9k, k-2]" % h)
    if not (2 * t <= s <= (h // 2) * t):
        raise HypothesisViolation("s=%d outside [2t, floor(h/2)t]" % s)
    if not (2.0 * k ** -3 < eta <= 1.0 / (2.0 * k)):
        raise HypothesisViolation("eta=%g outside (2k^-3, (2k)^-1]" % eta)
    if d < 10.0:
        raise HypothesisViolation("d=%g below 10" % d)
    if log_p < d * k * k:
        raise HypothesisViolation("log_p=%g below d*k^2" % log_p)
    ratio = 4.0 * math.log(k) / (d * k * k * eta)
    if not (18.0 / k <= ratio <= 0.4):
        raise HypothesisViolation("4 log k/(d k^2 eta)=%g outside [18/k, 0.4]" % ratio)
    kk, hh, ss, tt = float(k), float(h), float(s), float(t)
    e_val = (2.0 * ss - tt * (hh + kk) / 2.0 + tt * (tt - 1.0) / 2.0
             + eta * ss * ss / (2.0 * tt) + hh * tt * math.exp(-ss / (hh * tt)))
    log_a = (ss * ss / tt
             + 10.5 * tt * math.log(kk) ** 2 / (d * kk * eta * eta)
             + ss * ((1.0 / eta + hh) * (1.0 - 1.0 / hh) ** (ss / tt) - hh)
             * math.log(10.0 * eta))
    return log_a, e_val


def snt_bruteforce(N: int, t: float, u_grid_size: int = 256, m: int = 2) -> float:
    """Direct evaluation of the shifted partial-sum supremum.

    Max over u on a uniform grid in (0, 1] and over all integer endpoints
    R in (N, mN] of |sum_{N <= n <= R} (n+u)^{-it}|, via vectorized prefix
    sums of the unit-modulus summands.
    """
    if not (2 <= N <= 10 ** 4):
        raise ValueError("N must lie in [2, 1e4]")
    if t > 10 ** 6:
        raise ValueError("t must be <= 1e6")
    if u_grid_size < 64:
        raise ValueError("u grid must have >= 64 points")
    n = np.arange(N, m * N + 1, dtype=np.float64)
    u = (np.arange(1, u_grid_size + 1, dtype=np.float64) / u_grid_size)[:, None]
    phases = np.exp(-1j * t * np.log(n[None, :] + u))
    prefix = np.cumsum(phases, axis=1)
    # endpoints R run over (N, mN]; prefix index 0 is the n = N term alone
    return float(np.max(np.abs(prefix[:, 1:])))


def snt_bound(N: float, t: float) -> float:
    """Published partial-sum bound C * N^{1 - 1/(D*lambda^2)} with
    lambda = log t / log N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if t < N:
        raise ValueError("bound requires t >= N (lambda >= 1)")
    lam = math.log(t) / math.log(N)
    return SNT_CONSTANT * N ** (1.0 - 1.0 / (SNT_DENOM * lam * lam))
