"""Session-scoped fixtures for the expensive shared computations."""

from __future__ import annotations

import time

import pytest

from zetabound import expsum, vinogradov, zetabounds


@pytest.fixture(scope="session")
def default_table():
    """(rows, elapsed_seconds) for the default certified-table run: every k
    below 500, a 200-point geometric sample of the mid range plus endpoints,
    and the closed-form endpoints above."""
    t0 = time.perf_counter()
    rows = vinogradov.rho_theta_table(129, 90000, mode="geometric")
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="session")
def sweep_result():
    t0 = time.perf_counter()
    result = expsum.sweep(84.0, 220.0)
    return result, time.perf_counter() - t0


@pytest.fixture(scope="session")
def theorem2_run():
    t0 = time.perf_counter()
    reports = zetabounds.verify_theorem2()
    return reports, time.perf_counter() - t0


@pytest.fixture(scope="session")
def theorem2_reports(theorem2_run):
    return theorem2_run[0]
