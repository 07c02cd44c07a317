"""Verification engine for an explicit zeta-bound constant chain.

Subpackages re-verify, against independent oracles, every explicit constant
in the chain: the mean-value exponent table (rho, theta), the partial-sum
bound C * N^{1 - 1/(D lambda^2)} with C = 8.7979 and D = 132.94357, the
|zeta| bound pair (A, B) = (70.6995, 4.43795), and the prime-counting error
constant d = 0.212579.
"""

from .report import CheckReport, RoundingPolicy
from .numerics import lambert_w0, g_of_y, sup_g
from .vinogradov import (
    RecursionConfig, DeltaTrace, RhoThetaRow, RHO_THETA_TABLE,
    phi_sequence, next_delta, choose_r, omega_config, iterate_system,
    program_start, rho_theta_table, analytic_delta_bound, analytic_rho_theta,
    delta_s_bound, Inadmissible, NoAdmissibleR,
)
from .tyrina import (
    TyrinaState, TyrinaBound, x_of_y, y_of_x, l0, tyrina_sequence,
    tyrina_bound, threshold_checks,
)
from .expsum import (
    OptimizerConfig, LambdaInterval, LargeLambdaParams, SweepResult,
    breakpoints, rho_theta_lookup, make_interval, interval_eval,
    optimize_interval, sweep, large_lambda_check, f_large, wj_bound,
    incomplete_system_bound, snt_bruteforce, snt_bound,
    InfeasibleInterval, HypothesisViolation, SNT_CONSTANT, SNT_DENOM,
)
from .zetabounds import (
    BoundConstants, constant_B, constant_A, small_t_chain, pnt_constant_d,
    m_variant_constant, hurwitz_zeta, verify_theorem2, constant_checks,
    PrecisionError,
)

__version__ = "0.1.0"
