import math
import random

import numpy as np
import pytest

from torsorcount.archimedean import (
    QuadratureError,
    _adaptive_simpson,
    _g1_array,
    g1,
    g1_intervals,
    g2,
    omega_infinity,
    omega_infinity_mc,
)

OMEGA_INF = 31.5863910  # frozen: both schemes at tol 1e-7 agree to ~1e-8
G2_AT_QUARTER = 12.880538196  # frozen from Simpson/Gauss agreement at 1e-8


def test_g1_examples():
    assert g1(0.0, 1.0) == 2.0
    assert g1(0.0, 0.25) == 4.0
    rng = random.Random(1)
    for _ in range(200):
        u, v = rng.uniform(-3, 3), rng.uniform(0.01, 1.0)
        assert g1(u, v) == g1(-u, v)


def test_g1_rejects_nonpositive_v():
    with pytest.raises(ValueError):
        g1(0.0, 0.0)
    with pytest.raises(ValueError):
        g1(1.0, -1.0)


def test_g1_stable_matches_interval_arithmetic():
    rng = random.Random(9)
    for _ in range(5000):
        u, v = rng.uniform(-4, 4), rng.uniform(0.01, 1.0)
        a, b = g1(u, v), g1_intervals(u, v)
        assert abs(a - b) <= 1e-10 * max(1.0, b)


def test_g1_matches_grid_measure():
    # 1-D measure estimated by sampling t on a fine grid over [-1/v^2, 1/v^2]
    for i in range(1, 101, 7):
        v = i / 100.0
        for j in range(0, 100, 9):
            u = -3.0 + 6.0 * j / 99.0
            n = 40_000
            ts = np.linspace(-1.0 / v**2, 1.0 / v**2, n)
            w = ts * v + u * u
            ok = (np.abs(ts * v * v) <= 1) & (np.abs(v * w) <= 1) & (np.abs(ts * w) <= 1)
            est = float(np.count_nonzero(ok)) * (ts[1] - ts[0])
            assert abs(g1(u, v) - est) <= 4.0 * (ts[1] - ts[0]) + 1e-12


def test_g1_bounds():
    rng = random.Random(4)
    for _ in range(2000):
        u, v = rng.uniform(-5, 5), rng.uniform(0.001, 1.0)
        assert 0.0 <= g1(u, v) <= 2.0 / v**2 + 1e-12
    for v in (0.03, 0.2, 0.9, 1.0):
        assert abs(g1(0.0, v) - 2.0 / math.sqrt(v)) < 1e-12


def test_g1_array_matches_scalar():
    rng = np.random.default_rng(12)
    u = rng.uniform(-4, 4, size=3000)
    v = rng.uniform(1e-6, 1.0, size=3000)
    vals = _g1_array(u, v)
    for i in range(0, 3000, 13):
        assert abs(vals[i] - g1(float(u[i]), float(v[i]))) <= 1e-10 * max(
            1.0, vals[i]
        )


def test_g2_value_at_one():
    q = g2(1.0, tol=1e-8)
    assert abs(q.value - 10.0 / 3.0) < 1e-6
    assert q.error_estimate <= 1e-8
    assert q.evaluations > 0


def test_g2_positive():
    for v in (0.1, 0.5, 1.0):
        assert g2(v).value > 0


def test_g2_dual_scheme_and_frozen_value():
    qa = g2(0.25, tol=1e-8)
    qg = g2(0.25, tol=1e-8, scheme="gauss")
    assert abs(qa.value - qg.value) <= qa.error_estimate + qg.error_estimate + 1e-9
    assert abs(qa.value - G2_AT_QUARTER) < 1e-6


def test_g2_domain_validation():
    with pytest.raises(ValueError):
        g2(0.0)
    with pytest.raises(ValueError):
        g2(1.5)
    with pytest.raises(ValueError):
        g2(0.5, tol=-1)


def test_g2_budget_exhaustion_reported():
    with pytest.raises(QuadratureError):
        g2(0.37, tol=1e-12, budget=40)


def test_omega_dual_schemes_agree():
    qa = omega_infinity(1e-5)
    qg = omega_infinity(1e-5, scheme="gauss", budget=40_000)
    assert abs(qa.value - qg.value) <= qa.error_estimate + qg.error_estimate
    assert abs(qa.value - OMEGA_INF) < 5e-5
    assert qa.value > 0 and math.isfinite(qa.value)


def test_omega_reproducible():
    a = omega_infinity(1e-4)
    b = omega_infinity(1e-4)
    assert a == b


def test_omega_exceeds_partial_integral():
    # 3 * integral of g2 over v in [1/2, 1] is a strict lower bound
    def f(w):
        return 4.0 * w**3 * g2(w**4, 1e-7).value

    lo = 0.5**0.25
    val, _, _ = _adaptive_simpson(f, [(lo, 1.0)], 1e-6, 100_000)
    partial = 3.0 * val
    assert 0 < partial < omega_infinity(1e-5).value


def test_mc_deterministic():
    assert omega_infinity_mc(42, 50_000) == omega_infinity_mc(42, 50_000)


def test_mc_error_scaling():
    _, se1 = omega_infinity_mc(5, 100_000)
    _, se4 = omega_infinity_mc(5, 400_000)
    # quadrupling the samples should halve the standard error, roughly
    assert abs(se1 / se4 - 2.0) < 0.4


def test_mc_agrees_with_quadrature():
    quad = omega_infinity(1e-5)
    est, se = omega_infinity_mc(7, 400_000)
    assert abs(est - quad.value) <= 3.0 * se + quad.error_estimate


def test_mc_rejects_tiny_sample():
    with pytest.raises(ValueError):
        omega_infinity_mc(1, 10)
