"""Small-s machinery: the x/y inverse pair, the threshold integer l0, the
(r_n, s_n, Delta_{s_n}) recursion, and the threshold checks feeding the
mid-range deficit bound.

x(y) maps a deficit level to the smallest index where the recursion reaches
it; its inverse y(x) has a closed form through the principal Lambert W
branch, which is evaluated directly (not by root-finding) so the closed form
itself is exercised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .numerics import lambert_w0
from .report import CheckReport

__all__ = [
    "TyrinaState", "TyrinaBound",
    "x_of_y", "y_of_x", "l0", "tyrina_sequence", "tyrina_bound",
    "threshold_checks",
]


@dataclass
class TyrinaState:
    """Recursion rows (n, s_n, r_n, delta_sn) for one k."""

    k: int
    rows: list = field(default_factory=list)

    def s_values(self) -> list[int]:
        return [row[1] for row in self.rows]


@dataclass
class TyrinaBound:
    """Moment-bound certificate at (k, s): log of the constant factor, the
    certified exponent-deficit lower bound, and which of the four range
    cases produced it."""

    log_d: float
    kappa_lower: float
    case: int

    def __iter__(self):
        yield self.log_d
        yield self.kappa_lower


def x_of_y(k: int, y: float) -> float:
    """x(y) = -y + 2k - (k+1)^2 ln(1 - 2(y-k)/(k^2-k)), for k <= y < k(k+1)/2."""
    kk = float(k)
    if not (kk <= y < kk * (kk + 1.0) / 2.0):
        raise ValueError("y must lie in [k, k(k+1)/2)")
    return -y + 2.0 * kk - (kk + 1.0) ** 2 * math.log(
        1.0 - 2.0 * (y - kk) / (kk * kk - kk))


def y_of_x(k: int, x: float) -> float:
    """Inverse of x_of_y via the principal Lambert W branch.

    Writing A = (k+1)^2, c = k(k-1)/2 and T = (k(k+1)/2 - y)/A, the defining
    relation collapses to T e^{-T} = (c/A) e^{(k - c - x)/A} with T in (0, c/A],
    so T = -W(-(c/A) e^{(k-c-x)/A}) on the principal branch.
    """
    kk = float(k)
    if x < kk:
        raise ValueError("x must be >= k")
    a = (kk + 1.0) ** 2
    c = kk * (kk - 1.0) / 2.0
    arg = -(c / a) * math.exp((kk - c - x) / a)
    w = lambert_w0(arg)
    return kk * (kk + 1.0) / 2.0 + a * w


def l0(k: int) -> int:
    """Smallest integer at or above x evaluated at the half-deficit k^2/2."""
    if k < 3:
        raise ValueError("k must be >= 3")
    return int(math.ceil(x_of_y(k, k * k / 2.0)))


def _nearest_up(x: float) -> int:
    """Nearest integer with exact halves rounded up."""
    return int(math.floor(x + 0.5))


def tyrina_sequence(k: int, n_max: int) -> TyrinaState:
    """Rows of the step recursion starting from s_1 = k, Delta_{s_1} = k:
      r_n = nearest((2 Delta + k(k+1)) / (2k+1))
      Delta_next = Delta + r_n - (2r_n-k-1)(2r_n-k)/(2r_n) - Delta/r_n
      s_next = s_n + r_n
    """
    if k < 3 or n_max < 1:
        raise ValueError("need k >= 3 and n_max >= 1")
    kk = float(k)
    s = k
    delta = kk
    rows = []
    for n in range(1, n_max + 1):
        r = _nearest_up((2.0 * delta + kk * (kk + 1.0)) / (2.0 * kk + 1.0))
        assert r > 0, "nonpositive step size in the recursion"
        rows.append((n, s, r, delta))
        delta = (delta + r - (2.0 * r - kk - 1.0) * (2.0 * r - kk) / (2.0 * r)
                 - delta / r)
        s = s + r
    return TyrinaState(k=k, rows=rows)


def _sequence_through(k: int, s_target: int) -> TyrinaState:
    """Sequence rows until s_n exceeds s_target (plus one extra row)."""
    kk = float(k)
    s = k
    delta = kk
    rows = []
    n = 1
    while True:
        r = _nearest_up((2.0 * delta + kk * (kk + 1.0)) / (2.0 * kk + 1.0))
        assert r > 0
        rows.append((n, s, r, delta))
        if s > s_target:
            break
        delta = (delta + r - (2.0 * r - kk - 1.0) * (2.0 * r - kk) / (2.0 * r)
                 - delta / r)
        s = s + r
        n += 1
    return TyrinaState(k=k, rows=rows)


def tyrina_bound(k: int, s: int) -> TyrinaBound:
    """log of the moment-bound constant and the certified deficit lower bound.

    Case 1: s on the recursion sequence below l0 -> lower bound y(s).
    Case 2: s = l0 + t*k        -> k(k+1)/2 - (k+2)/2 (1 - 1/k).
    Case 3: s strictly between consecutive sequence points below l0
            -> Delta_{s_{n+1}} * s / s_{n+1}.
    Case 4: s strictly between consecutive l-thresholds
            -> (case-2 value) * s / l_t.
    """
    if s < k:
        raise ValueError("s must be >= k")
    kk = float(k)
    ss = float(s)
    log_d = (2.0 * ss * (kk + ss / kk) * math.log(2.0)
             + (kk + 4.0 * ss * ss) * math.log(kk)
             + 2.0 * (ss - kk) * math.log(ss))
    ell0 = l0(k)
    plateau = kk * (kk + 1.0) / 2.0 - (kk + 2.0) / 2.0 * (1.0 - 1.0 / kk)
    if s >= ell0:
        if (s - ell0) % k == 0:
            return TyrinaBound(log_d, plateau, 2)
        t = (s - ell0) // k + 1
        lt = ell0 + t * k
        return TyrinaBound(log_d, plateau * ss / lt, 4)
    state = _sequence_through(k, s)
    seq = state.rows
    for idx, (_n, sn, _r, _delta) in enumerate(seq):
        if sn == s:
            return TyrinaBound(log_d, y_of_x(k, float(s)), 1)
        if sn > s:
            delta_next = seq[idx][3]
            return TyrinaBound(log_d, delta_next * ss / sn, 3)
    raise AssertionError("sequence scan passed the target without bracketing")


def threshold_checks(k_samples) -> list[CheckReport]:
    """Threshold inequalities behind the mid-range deficit bound.

    For each k >= 50: x(0.101 k^2) <= 0.1247 k^2.  For each k >= 500 the
    equivalent threshold inequality 0.101 k^2 >= k(k+1)/2 - 0.4 k^2; the
    report also certifies that the same inequality fails at k = 499.
    """
    reports = []
    for k in sorted(set(int(k) for k in k_samples)):
        if k < 50:
            raise ValueError("samples must be >= 50")
        kk = float(k)
        xv = x_of_y(k, 0.101 * kk * kk)
        reports.append(CheckReport.upper(
            "x_at_0.101k2_below_0.1247k2[k=%d]" % k, xv, 0.1247 * kk * kk))
        if k >= 500:
            lhs = kk * (kk + 1.0) / 2.0 - 0.4 * kk * kk
            reports.append(CheckReport.upper(
                "midrange_threshold[k=%d]" % k, lhs, 0.101 * kk * kk))
    kk = 499.0
    lhs = kk * (kk + 1.0) / 2.0 - 0.4 * kk * kk
    reports.append(CheckReport.lower(
        "midrange_threshold_fails[k=499]", lhs, 0.101 * kk * kk,
        detail="inequality must fail below the k=500 cutoff"))
    return reports
