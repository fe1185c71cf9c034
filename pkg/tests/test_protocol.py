import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabrec.errors import DegenerateConfigError
from stabrec.protocol import (
    ProtocolConfig,
    absorption,
    analytic_cost,
    probability_sequence,
    result_record,
    simulate,
)


def value_iteration(q_left, sweeps=20000):
    # oracle: iterate h_i and T_i to their fixed points
    m = len(q_left)
    h = np.zeros(m + 2)
    t = np.zeros(m + 2)
    h[0] = 1.0
    for _ in range(sweeps):
        for i in range(1, m + 1):
            q = q_left[i - 1]
            h[i] = q * h[i - 1] + (1 - q) * h[i + 1]
            t[i] = 1 + q * t[i - 1] + (1 - q) * t[i + 1]
    return h[1], t[1]


def symmetric_cost(k, d):
    # z = 0, q1 = 1/2: gambler's ruin gives P = 1 - 1/k and E[steps] = k - 1
    return k * (d + k - 1) / (k - 1)


@pytest.mark.parametrize("d", [10, 100, 1000, 10000])
def test_k2_exact(d):
    assert analytic_cost(ProtocolConfig(k=2, d=d)) == 2 * (d + 1)


@pytest.mark.parametrize("k", [2, 3, 5, 10, 40])
def test_symmetric_closed_form(k):
    assert analytic_cost(ProtocolConfig(k=k, d=1000)) == pytest.approx(symmetric_cost(k, 1000), rel=1e-12)


def test_k3_value():
    assert analytic_cost(ProtocolConfig(k=3, d=1000, z=0.0)) == pytest.approx(1503, abs=1e-9)


def test_cost_is_not_monotone_in_k():
    costs = [analytic_cost(ProtocolConfig(k=k, d=1000)) for k in range(2, 80)]
    best = int(np.argmin(costs))
    assert 0 < best < len(costs) - 1
    assert costs[0] > costs[best] < costs[-1]


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 8), st.floats(0.0, 0.99), st.floats(0.05, 0.5))
def test_absorption_matches_value_iteration(k, z, q1):
    q = probability_sequence(q1, z, k - 1)
    p, steps = absorption(q)
    p_ref, t_ref = value_iteration(q, sweeps=4000)
    assert p == pytest.approx(p_ref, rel=1e-6)
    assert steps == pytest.approx(t_ref, rel=1e-6)


def test_sequence_uniform_when_z_zero():
    assert probability_sequence(0.5, 0.0, 30) == [0.5] * 30


def test_sequence_converges_to_fixed_point():
    z = math.sqrt(0.96)
    seq = probability_sequence(0.5, z, 20)
    assert seq[1] == pytest.approx(0.02)
    assert abs(seq[-1] - (1 - z) / 2) < 1e-6
    assert all(a >= b for a, b in zip(seq, seq[1:]))


def test_sequence_rejects_inconsistent_start():
    with pytest.raises(DegenerateConfigError):
        probability_sequence(0.99, 0.0, 3)
    with pytest.raises(DegenerateConfigError):
        probability_sequence(1.0, 0.0, 2)
    assert probability_sequence(0.5, 0.0, 0) == []


@pytest.mark.parametrize(
    "kwargs",
    [dict(k=1, d=1), dict(k=2.5, d=1), dict(k=2, d=-1), dict(k=2, d=1, z=1.5),
     dict(k=2, d=1, q1=0.0), dict(k=2, d=1, trials=0), dict(k=2, d=1, seed=-1)],
)
def test_config_validation(kwargs):
    with pytest.raises(DegenerateConfigError):
        ProtocolConfig(**kwargs)


def test_mc_k2_within_two_percent():
    r = simulate(ProtocolConfig(k=2, d=10, q1=0.5, trials=100_000, seed=7))
    assert abs(r.n_k - 22) / 22 < 0.02


def test_mc_k3_within_band():
    r = simulate(ProtocolConfig(k=3, d=1000, z=0.0, trials=100_000, seed=7))
    assert abs(r.n_k - 1503) / 1503 < 0.015


def test_mc_is_deterministic():
    cfg = ProtocolConfig(k=4, d=50, z=0.3, q1=0.4, trials=5000, seed=99)
    a, sa, ka = simulate(cfg, return_trials=True)
    b, sb, kb = simulate(cfg, return_trials=True)
    assert a == b
    assert np.array_equal(sa, sb) and np.array_equal(ka, kb)
    assert simulate(ProtocolConfig(k=4, d=50, z=0.3, q1=0.4, trials=5000, seed=100)).n_k != a.n_k


def test_mc_within_three_standard_errors():
    rng = np.random.default_rng(2718)
    for i in range(10):
        k = int(rng.integers(2, 9))
        z = float(rng.uniform(0, 0.95))
        q1 = float(rng.uniform(0.1, 0.5))
        d = float(rng.choice([0, 10, 100, 1000]))
        cfg = ProtocolConfig(k=k, d=d, z=z, q1=q1, trials=40_000, seed=1000 + i)
        r = simulate(cfg)
        exact = analytic_cost(cfg)
        assert abs(r.n_k - exact) < 3 * r.std_error, (cfg, r.n_k, exact, r.std_error)


def test_trial_level_accounting():
    cfg = ProtocolConfig(k=5, d=7, trials=2000, seed=3)
    r, steps, success = simulate(cfg, return_trials=True)
    assert r.successes == success.sum()
    assert r.total_cost == 7 * 2000 + steps.sum()
    # a walk from 1 ends at 0 after an odd number of steps, at k after k-1 + even
    assert np.all(steps[success] % 2 == 1)
    assert np.all((steps[~success] - 4) % 2 == 0)


def test_result_record_fields():
    rec = result_record(simulate(ProtocolConfig(k=2, d=10, trials=100, seed=1)))
    assert list(rec) == ["k", "d", "z", "q1", "trials", "seed", "successes", "total_cost", "n_k_mc", "n_k_analytic"]
    assert rec["n_k_analytic"] == 22
