import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ldpc_guard.channel import (
    CSV_HEADER, BscRun, FerPoint, bsc_supports, estimate_slope, exact_fer, min_failure_weight_search,
    points_to_csv, simulate_fer, usable, wilson,
)
from ldpc_guard.decoder import CW3_FIXED, GALLAGER_A, decode_batch_dense
from ldpc_guard.verification import build_53_fixture

from conftest import random_graph


def test_wilson_known_values():
    # 0 of 10: upper bound z^2/(n+z^2)
    lo, hi = wilson(0, 10)
    z2 = 1.959963984540054 ** 2
    assert lo == 0.0 and hi == pytest.approx(z2 / (10 + z2))
    lo, hi = wilson(50, 100)
    assert lo == pytest.approx(0.4038, abs=1e-4) and hi == pytest.approx(0.5962, abs=1e-4)
    assert wilson(0, 0) == (0.0, 1.0)


@given(st.integers(0, 500), st.integers(1, 500))
def test_wilson_contains_estimate(k, n):
    k = min(k, n)
    lo, hi = wilson(k, n)
    assert 0 <= lo <= k / n <= hi <= 1


def test_bsc_run_validation():
    for kw in (dict(alpha=0.0), dict(alpha=1.0), dict(alpha=0.1, target_frame_errors=0),
               dict(alpha=0.1, max_trials=0)):
        with pytest.raises(ValueError):
            BscRun(**kw)


def test_bsc_supports_rate():
    ptr, idx = bsc_supports(np.random.default_rng(0), 200, 0.05, 5000)
    assert ptr[0] == 0 and ptr[-1] == len(idx)
    assert abs(len(idx) / (200 * 5000) - 0.05) < 0.002
    rows = np.split(idx, ptr[1:-1])
    assert all(np.all(np.diff(r) > 0) for r in rows)


def test_synthetic_slope_exact():
    pts = [FerPoint(a, 10 ** 9, round(10 ** 9 * 3.0 * a ** 4)) for a in (0.02, 0.03, 0.05)]
    fit = estimate_slope(pts)
    assert fit.slope == pytest.approx(4.0, abs=1e-3)
    assert not fit.insufficient and fit.points_used == 3


def test_slope_marks_insufficient_points():
    pts = [FerPoint(0.05, 1000, 300), FerPoint(0.03, 1000, 5), FerPoint(0.02, 1000, 0)]
    assert not usable(pts[1]) and not usable(pts[2])
    fit = estimate_slope(pts)
    assert fit.insufficient and math.isnan(fit.slope)


def test_tiny_alpha_gives_no_errors(cw3_desk):
    pt = simulate_fer(cw3_desk.graph, GALLAGER_A, BscRun(1e-6, seed=1, max_trials=20_000), workers=1)
    assert pt.trials == 20_000 and pt.frame_errors == 0 and pt.fer == 0.0
    assert pt.min_fail_weight is None


def test_simulation_deterministic_and_worker_independent(cw3_desk):
    run = BscRun(0.05, seed=3, max_trials=200_000, target_frame_errors=60)
    a = simulate_fer(cw3_desk.graph, GALLAGER_A, run, workers=1, chunk=3000)
    b = simulate_fer(cw3_desk.graph, GALLAGER_A, run, workers=2, chunk=3000)
    assert a == b
    assert a.frame_errors == 60 and a.nonconverged + a.miscorrected == 60
    assert sum(a.failure_weights.values()) == 60 and a.min_fail_weight >= 4


def _dense_exact_fer(g, schedule, alpha, max_iter):
    words = np.array(list(product((0, 1), repeat=g.n_vars)), dtype=np.int8)
    status, _ = decode_batch_dense(g, words, schedule, max_iter)
    w = words.sum(axis=1)
    return float(np.sum((status != 0) * alpha ** w * (1 - alpha) ** (g.n_vars - w)))


@pytest.mark.parametrize("seed", range(4))
def test_exact_fer_matches_dense_enumeration(seed):
    g = random_graph(np.random.default_rng(seed), 10, 7, 3)
    for sched in (GALLAGER_A, CW3_FIXED):
        assert exact_fer(g, sched, 0.1, 10) == pytest.approx(_dense_exact_fer(g, sched, 0.1, 10), rel=1e-12)


def test_exact_fer_weight_cap_is_lower_bound():
    g = random_graph(np.random.default_rng(5), 12, 8, 3)
    full = exact_fer(g, GALLAGER_A, 0.1)
    assert exact_fer(g, GALLAGER_A, 0.1, max_weight=3) <= full
    with pytest.raises(ValueError):
        exact_fer(random_graph(np.random.default_rng(0), 40, 30, 3), GALLAGER_A, 0.1)


def test_monte_carlo_agrees_with_exact_on_fixture():
    g = build_53_fixture().graph
    want = exact_fer(g, GALLAGER_A, 0.1)
    pt = simulate_fer(g, GALLAGER_A, BscRun(0.1, seed=0, max_trials=40_000, target_frame_errors=10 ** 9), workers=1)
    lo, hi = pt.interval
    assert pt.trials == 40_000 and lo <= want <= hi


def test_csv_output():
    pts = [FerPoint(0.05, 1000, 12, min_fail_weight=5), FerPoint(0.02, 1000, 0)]
    lines = points_to_csv(pts).splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1].startswith("0.05,1000,12,1.200000e-02,")
    assert lines[1].endswith(",5") and lines[2].endswith(",")


def test_min_failure_weight_on_desk_code(cw3_desk):
    res = min_failure_weight_search(cw3_desk.graph, GALLAGER_A, samples_per_weight=100_000, workers=1)
    assert res.exhaustive_through == 3 and res.lower_bound == 4
    assert res.weight is None or res.weight >= 4
    assert not res.proven_minimal


def test_min_failure_weight_on_53_fixture():
    fx = build_53_fixture()
    res = min_failure_weight_search(fx.graph, GALLAGER_A, workers=1)
    assert res.weight == 3 and res.proven_minimal
    assert set(res.pattern) == set(fx.vars("v11", "v12", "v13"))
