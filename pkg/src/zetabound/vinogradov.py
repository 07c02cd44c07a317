"""Mean-value recursion engine producing the certified (rho, theta) table.

The engine iterates the deficit recursion Delta_{n+1} = delta0(k, r_n, Delta_n)
while accumulating the companion constant log C_n, then converts the stopping
index into the exponent pair rho = s/k^2, theta = log C / (k^3 log k).  Two
weight recursions are supported ("primed" and "ford"); the primed one drives
all numeric table rows, the analytic closed forms cover k >= 90000.

Performance: the backward weight recurrence has an equivalent forward
truncated-product form whose terms decay at least geometrically with ratio
1/2, so 64 terms carry the full double-precision value.  Small k (the
transliteration-equivalence range) keep the literal loop; large k use the
truncated form, cutting the cost per k from O(k^2) to O(k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .report import RoundingPolicy  # re-exported policy shared by checks

__all__ = [
    "Inadmissible", "NoAdmissibleR", "IterationLimit",
    "RecursionConfig", "DeltaTrace", "RhoThetaRow",
    "phi_sequence", "next_delta", "choose_r", "omega_config",
    "iterate_system", "program_start", "rho_theta_table",
    "analytic_delta_bound", "analytic_rho_theta", "delta_s_bound",
    "RHO_THETA_TABLE", "LITERAL_K_MAX",
]


class Inadmissible(Exception):
    """The (k, r, delta) triple fails the weight admissibility condition."""


class NoAdmissibleR(Exception):
    """Every candidate r in the search window is inadmissible."""


class IterationLimit(Exception):
    """The recursion failed to reach its goal within the allowed steps."""


# Certified table rows: (k_lo, k_hi, rho, theta); k_hi None = unbounded.
RHO_THETA_TABLE = (
    (129, 137, 3.177207, 2.40930),
    (138, 139, 3.177527, 2.39529),
    (140, 146, 3.178551, 2.39167),
    (147, 148, 3.178871, 2.38259),
    (149, 170, 3.181869, 2.37929),
    (171, 190, 3.184127, 2.35334),
    (191, 339, 3.192950, 2.33313),
    (340, 499, 3.196497, 2.24352),
    (500, 89999, 3.205502, 1.77775),
    (90000, None, 3.208630, 2.17720),
)

# Largest k that keeps the literal (C-order) inner loop; above this the
# truncated-product evaluation is used (identical to < 2^-64 relative).
LITERAL_K_MAX = 2000

_VARIANT_CODES = {"primed": 0, "ford": 1}

# Kernel status codes.
_OK = 0
_SENTINEL = 1


@dataclass
class RecursionConfig:
    """Per-k parameters of the deficit recursion."""

    k: int
    omega: float
    eta: float
    logW: float
    goal: float
    variant: str = "primed"

    def __post_init__(self):
        if self.k < 26:
            raise ValueError("k must be >= 26")
        if self.variant not in _VARIANT_CODES:
            raise ValueError("variant must be 'primed' or 'ford'")
        lo = 1.0 / (3.0 * math.log(self.k))
        if not (lo <= self.omega <= 0.5):
            raise ValueError("omega %.6g outside [1/(3 log k), 1/2]" % self.omega)
        if self.eta != 1.0 + self.omega:
            raise ValueError("eta must equal 1 + omega exactly")


@dataclass
class DeltaTrace:
    """Accepted steps (n, r, delta, logC) of one recursion run."""

    k: int
    rows: list = field(default_factory=list)


@dataclass
class RhoThetaRow:
    """A k-range with certified exponent pair after round-up."""

    k_lo: int
    k_hi: int
    rho: float
    theta: float
    rho_raw: float = 0.0
    theta_raw: float = 0.0
    k_rho: int = 0
    k_theta: int = 0


@njit(cache=True, nogil=True)
def _newdel(kk, rr, delta, variant, literal):
    """One candidate step: returns (delta', status).

    status 1 marks the inadmissible shortcut (the listing's doubled-delta
    sentinel); the sentinel value is still returned so the selection loop
    can reproduce the listing's control flow bit for bit.
    """
    tkr = 2.0 * kk * rr
    y = 2.0 * delta - (kk - rr) * (kk - rr + 1.0)
    if y < 0.0 and (2.0 * kk / (tkr + y)) <= 1.0 / (kk + 1.0):
        return delta * 2.0, _SENTINEL
    if 4.0 * y + 1.0 < 0.0:
        return delta * 2.0, _SENTINEL
    j = int(math.floor(min(0.5 * (3.0 + math.sqrt(4.0 * y + 1.0)), 9.0 * rr / 10.0)))
    if variant == 1:
        # backward recurrence with the 1/(2kr) coefficient family
        p = 1.0 / rr
        for jj in range(j - 1, 0, -1):
            p = 0.5 / rr + 0.5 * (1.0 - (y - jj * jj + jj) / tkr) * p
    elif literal or j < 2:
        p = 1.0 / rr
        for jj in range(j - 1, 0, -1):
            p = 0.5 / rr + 0.5 * (1.0 - y / (tkr - 2.0 * rr * jj)) * p
    else:
        # forward truncated-product form of the same recurrence:
        #   p1 = (1/2r) sum_{m=0}^{j-2} prod_{i<=m} b_i + prod_{i<=j-1} b_i / r
        # with b_i in (0, 1/2] along admissible trajectories, so 64 terms
        # carry the full value; any b_i <= -1/2 falls back to the loop.
        lim = j - 1 if j - 1 < 64 else 64
        acc = 1.0
        prod = 1.0
        exact = True
        for i in range(1, lim + 1):
            b = 0.5 * (1.0 - y / (tkr - 2.0 * rr * i))
            if b <= -0.5:
                exact = False
                break
            prod *= b
            if i <= j - 2:
                acc += prod
        if exact:
            p = 0.5 / rr * acc
            if j - 1 <= 64:
                p += prod / rr
        else:
            p = 1.0 / rr
            for jj in range(j - 1, 0, -1):
                p = 0.5 / rr + 0.5 * (1.0 - y / (tkr - 2.0 * rr * jj)) * p
    return delta - kk + 0.5 * p * (tkr - y), _OK


@njit(cache=True, nogil=True)
def _choose_r(kk, delta, variant, literal):
    """Scan the 5-candidate window; returns (r_best, delta_best, r0)."""
    r0 = int(math.sqrt(kk * kk + kk - 2.0 * delta) + 0.5) - 2
    bestdel = kk * kk
    bestr = -1
    for r in range(r0, r0 + 5):
        if r < 1:
            continue
        d1, _status = _newdel(kk, float(r), delta, variant, literal)
        if d1 < bestdel:
            bestdel = d1
            bestr = r
    return bestr, bestdel, r0


@njit(cache=True, nogil=True)
def _iterate(kk, n0, delta0, logC0, goal, logH, logW, log_eta, variant, literal,
             trace_n, trace_r, trace_delta, trace_logc):
    """Drive the recursion to the goal; returns (status, s, rho, theta, used).

    status: 0 ok, 1 no admissible candidate, 2 trace capacity exceeded.
    """
    cap = trace_n.shape[0]
    delta = delta0
    logC = logC0
    n = n0
    used = 0
    while True:
        bestr, del1, r0 = _choose_r(kk, delta, variant, literal)
        if del1 >= delta and bestr < r0:
            return 1, 0, 0.0, 0.0, used
        if used >= cap:
            return 2, 0, 0.0, 0.0, used
        logC += max(logH + 4.0 * kk * n * log_eta, logW * (delta - del1))
        trace_n[used] = n
        trace_r[used] = bestr
        trace_delta[used] = del1
        trace_logc[used] = logC
        used += 1
        if del1 <= goal:
            s = int((n + (delta - goal) / (delta - del1)) * kk + 1.0)
            rho = s / kk / kk
            theta = logC / (kk * kk * kk * math.log(kk))
            return 0, s, rho, theta, used
        delta = del1
        n += 1


def omega_config(k: int, variant: str = "primed") -> RecursionConfig:
    """Fixed-point weight parameter and companion constants for one k."""
    if k < 26:
        raise ValueError("k must be >= 26")
    kk = float(k)
    logk = math.log(kk)
    k3 = kk * kk * kk * logk
    om = 0.5
    for _ in range(10):
        om = 1.5 / (math.log(18.0 * k3 / om) - 1.5)
    logW = (kk + 1.0) * max(1.5 + 1.5 / om, math.log(18.0 / om * k3))
    return RecursionConfig(k=k, omega=om, eta=1.0 + om, logW=logW,
                           goal=0.001 * kk * kk, variant=variant)


def phi_sequence(k: int, r: int, delta: float,
                 variant: str = "primed") -> tuple[list[float], bool]:
    """Weight sequence [phi_1 .. phi_j] and its admissibility flag.

    Admissible means the shortcut rejection does not fire and every weight
    stays >= 1/(k+1).
    """
    if not (4 <= r <= k):
        raise ValueError("r must lie in [4, k]")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    code = _VARIANT_CODES[variant]
    kk, rr = float(k), float(r)
    tkr = 2.0 * kk * rr
    y = 2.0 * delta - (kk - rr) * (kk - rr + 1.0)
    if y < 0.0 and (2.0 * kk / (tkr + y)) <= 1.0 / (kk + 1.0):
        return [], False
    if 4.0 * y + 1.0 < 0.0:
        return [], False
    j = int(math.floor(min(0.5 * (3.0 + math.sqrt(4.0 * y + 1.0)), 9.0 * rr / 10.0)))
    phis = [0.0] * max(j, 1)
    phis[-1] = 1.0 / rr
    for jj in range(j - 1, 0, -1):
        nxt = phis[jj]
        if code == 1:
            phis[jj - 1] = 0.5 / rr + 0.5 * (1.0 - (y - jj * jj + jj) / tkr) * nxt
        else:
            phis[jj - 1] = 0.5 / rr + 0.5 * (1.0 - y / (tkr - 2.0 * rr * jj)) * nxt
    admissible = all(p >= 1.0 / (kk + 1.0) for p in phis)
    return phis, admissible


def next_delta(k: int, r: int, delta: float, variant: str = "primed") -> float:
    """Single recursion step delta -> delta'; raises Inadmissible on the
    shortcut branch that the listing encodes as a doubled-delta sentinel."""
    code = _VARIANT_CODES[variant]
    d1, status = _newdel(float(k), float(r), float(delta), code,
                         k <= LITERAL_K_MAX)
    if status == _SENTINEL:
        raise Inadmissible("k=%d r=%d delta=%.6g" % (k, r, delta))
    return d1


def choose_r(k: int, delta: float, variant: str = "primed") -> tuple[int, float]:
    """Best candidate r in the 5-wide window around sqrt(k^2+k-2*delta)."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    code = _VARIANT_CODES[variant]
    bestr, bestdel, r0 = _choose_r(float(k), float(delta), code,
                                   k <= LITERAL_K_MAX)
    if bestdel >= delta and bestr < r0:
        raise NoAdmissibleR("k=%d delta=%.6g window [%d,%d]" % (k, delta, r0, r0 + 4))
    return bestr, bestdel


def program_start(k: int, program: int) -> tuple[int, float, float]:
    """Canonical iteration starts: program 1 from the first deficit, program 2
    from the certified mid-range deficit 0.4k^2 at n0 = ceil(0.1247k)."""
    kk = float(k)
    if program == 1:
        return 1, 0.5 * kk * kk * (1.0 - 1.0 / kk), kk * math.log(kk)
    if program == 2:
        return int(math.ceil(0.1247 * kk)), 0.4 * kk * kk, kk * math.log(kk)
    raise ValueError("program must be 1 or 2")


def iterate_system(cfg: RecursionConfig,
                   start: tuple[int, float, float]) -> tuple[int, float, float, DeltaTrace]:
    """Run the recursion from `start` = (n0, delta0, logC0) to the goal.

    Returns (s, rho, theta, trace).  The companion constant accumulates
    logC += max(3k log k + (4kn + k^2 - 4k) log eta, logW * (delta - delta')).
    """
    k = cfg.k
    kk = float(k)
    logk = math.log(kk)
    n0, delta0, logC0 = start
    logH = 3.0 * kk * logk + (kk * kk - 4.0 * kk) * math.log(cfg.eta)
    cap = 6 * k + 64
    trace_n = np.empty(cap, dtype=np.int64)
    trace_r = np.empty(cap, dtype=np.int64)
    trace_delta = np.empty(cap, dtype=np.float64)
    trace_logc = np.empty(cap, dtype=np.float64)
    status, s, rho, theta, used = _iterate(
        kk, n0, float(delta0), float(logC0), cfg.goal, logH, cfg.logW,
        math.log(cfg.eta), _VARIANT_CODES[cfg.variant], k <= LITERAL_K_MAX,
        trace_n, trace_r, trace_delta, trace_logc)
    if status == 1:
        raise NoAdmissibleR("k=%d: no admissible window candidate" % k)
    if status == 2 or used + n0 > k * k:
        raise IterationLimit("k=%d exceeded the n <= k^2 iteration budget" % k)
    trace = DeltaTrace(k=k, rows=[
        (int(trace_n[i]), int(trace_r[i]), float(trace_delta[i]), float(trace_logc[i]))
        for i in range(used)])
    return s, rho, theta, trace


def rho_theta_for_k(k: int) -> tuple[float, float]:
    """(rho, theta) computed for one k by the regime appropriate to it."""
    if k < 129:
        raise ValueError("table starts at k = 129")
    if k >= 90000:
        rho, theta, _n = analytic_rho_theta(k)
        return rho, theta
    program = 1 if k < 500 else 2
    cfg = omega_config(k)
    _s, rho, theta, _trace = iterate_system(cfg, program_start(k, program))
    return rho, theta


def _round_up(x: float, decimals: int) -> float:
    scale = 10.0 ** decimals
    return math.ceil(x * scale - 1e-9) / scale


def _round_nearest(x: float, decimals: int) -> float:
    return round(x, decimals)


def _sample_ks(lo: int, hi: int, mode: str, samples: int) -> list[int]:
    if mode == "full":
        return list(range(lo, hi + 1))
    if mode == "endpoints":
        return sorted({lo, hi})
    if mode == "geometric":
        if hi - lo <= samples:
            return list(range(lo, hi + 1))
        grid = np.unique(np.round(np.geomspace(lo, hi, samples)).astype(int))
        return sorted(set(grid.tolist()) | {lo, hi})
    raise ValueError("mode must be endpoints, geometric, or full")


def rho_theta_table(k_lo: int, k_hi: int, mode: str = "geometric",
                    samples: int = 200) -> list[RhoThetaRow]:
    """Certified table rows covering [k_lo, k_hi].

    Ranges below 500 are always evaluated at every k (cheap); the mid range
    [500, 90000) honors `mode`; k >= 90000 uses the analytic closed forms at
    the range endpoints.
    """
    if not (129 <= k_lo <= k_hi):
        raise ValueError("need 129 <= k_lo <= k_hi")
    out = []
    for lo, hi, _rho_t, _theta_t in RHO_THETA_TABLE:
        row_hi = k_hi if hi is None else min(hi, k_hi)
        row_lo = max(lo, k_lo)
        if row_lo > row_hi:
            continue
        if hi is None:
            ks = sorted({row_lo, row_hi})
        elif hi < 500:
            ks = list(range(row_lo, row_hi + 1))
        else:
            ks = _sample_ks(row_lo, row_hi, mode, samples)
        best_rho, best_theta = -1.0, -1.0
        k_rho = k_theta = ks[0]
        for k in ks:
            rho, theta = rho_theta_for_k(k)
            if rho > best_rho:
                best_rho, k_rho = rho, k
            if theta > best_theta:
                best_theta, k_theta = theta, k
        out.append(RhoThetaRow(
            k_lo=row_lo, k_hi=row_hi,
            rho=_round_nearest(best_rho, 6), theta=_round_up(best_theta, 5),
            rho_raw=best_rho, theta_raw=best_theta,
            k_rho=k_rho, k_theta=k_theta))
    return out


def _n_window(k: int, D: float) -> tuple[float, float]:
    kk = float(k)
    corr = ((1.0 - D / kk) / (2.0 - D / kk)) * (D / kk)
    upper = 0.5 * kk * (0.6494 + math.log(8.0 * kk / (25.0 * D)) - corr
                        + 2.051 / kk) + 1.0
    return 0.138128 * kk, upper


def analytic_delta_bound(k: int, n: int, D: float) -> tuple[float, float]:
    """Closed-form deficit and log-constant bounds for large k.

    Returns (delta_bound, logC_bound) with
      delta_bound = max((8/25) k^2 e^{0.6494 - 2n/k - corr(D,k) + 2.051/k}, Dk)
      logC_bound  = (2.055k^3 - 0.414k^2 + 3nk) log k
                    + (nk^2 + 2(n^2-n)k + 0.099912k^3) log 1.06
    """
    if k < 90000:
        raise ValueError("closed forms require k >= 90000")
    if not (1.0 <= D <= 0.4 * k):
        raise ValueError("D must lie in [1, 0.4k]")
    lo, hi = _n_window(k, D)
    if not (lo <= n <= hi):
        raise ValueError("n=%d outside closed-form window [%.3f, %.3f]" % (n, lo, hi))
    kk = float(k)
    nn = float(n)
    corr = ((1.0 - D / kk) / (2.0 - D / kk)) * (D / kk)
    delta_bound = max(
        (8.0 / 25.0) * kk * kk * math.exp(0.6494 - 2.0 * nn / kk - corr + 2.051 / kk),
        D * kk)
    logC_bound = ((2.055 * kk ** 3 - 0.414 * kk * kk + 3.0 * nn * kk) * math.log(kk)
                  + (nn * kk * kk + 2.0 * (nn * nn - nn) * kk + 0.099912 * kk ** 3)
                  * math.log(1.06))
    return delta_bound, logC_bound


def analytic_rho_theta(k: int, D: float | None = None) -> tuple[float, float, int]:
    """(rho, theta, n) from the closed forms at the integer witness n.

    n is the smallest integer at the top of the admissible window (the
    ceiling of the window's upper expression without the +1), which makes
    the deficit bound collapse to Dk; rho = n/k, theta from the log-constant
    closed form.
    """
    if D is None:
        D = 0.001 * k
    kk = float(k)
    _lo, hi = _n_window(k, D)
    n = int(math.ceil(hi - 1.0))
    _delta_bound, logC_bound = analytic_delta_bound(k, n, D)
    rho = n / kk
    theta = logC_bound / (kk ** 3 * math.log(kk))
    return rho, theta, n


def delta_s_bound(k: int, s: int, D: float) -> float:
    """Deficit bound at arbitrary s >= 0.138128 k^2 via the fractional-step
    closed form, with u = s mod k."""
    if k < 90000:
        raise ValueError("closed forms require k >= 90000")
    kk = float(k)
    corr = ((1.0 - D / kk) / (2.0 - D / kk)) * (D / kk)
    s_lo = 0.138128 * kk * kk
    s_hi = 0.5 * kk * kk * (0.6494 + math.log(8.0 * kk / (25.0 * D)) - corr
                            + 2.051 / kk)
    if not (s_lo <= s <= s_hi):
        raise ValueError("s=%d outside window [%.1f, %.1f]" % (s, s_lo, s_hi))
    u = float(s % k)
    ss = float(s)
    branch1 = (8.0 / 25.0) * kk * kk * math.exp(
        0.6494 - 2.0 * (ss - kk) / (kk * kk) - corr + 2.051 / kk
        + 2.0 * u / (kk ** 3))
    branch2 = D * kk * math.exp((2.0 * u / (kk * kk)) * (-1.0 + 1.0 / kk))
    return max(branch1, branch2)
