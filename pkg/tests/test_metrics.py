"""Rate and fidelity scores, checked against slow direct-sum oracles."""

import numpy as np
import pytest

from conftest import random_state
from decoscope import (JmDistribution, StateVector, builtin_oracles,
                       dephasing_fidelity, hadamard_all, m_marginal, p_jm,
                       phase_oracle, popcount_table, prepare_basis_state,
                       t1_rate, t2_rate, trace_metrics)


def _cat(n):
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = amps[-1] = 2**-0.5
    return StateVector(n, amps)


def _direct_t2(state):
    """O(4**n) double sum over computational pairs, the defining form."""
    probs = state.probabilities()
    ms = popcount_table(state.n) - state.n / 2
    gaps = np.abs(ms[:, None] - ms[None, :])
    return float(probs @ gaps @ probs)


def test_p_jm_of_polarized_state(basis_cache):
    dist = p_jm(prepare_basis_state(8, 0), basis_cache(8))
    assert dist.prob(4, -4) == pytest.approx(1.0, abs=1e-12)
    assert dist.total() == pytest.approx(1.0, abs=1e-12)


def test_p_jm_of_cat_state(basis_cache):
    dist = p_jm(_cat(8), basis_cache(8))
    assert dist.prob(4, 4) == pytest.approx(0.5, abs=1e-12)
    assert dist.prob(4, -4) == pytest.approx(0.5, abs=1e-12)


def test_p_jm_totals_one_for_random_states(basis_cache):
    rng = np.random.default_rng(3)
    for n in (2, 5, 7):
        for _ in range(5):
            dist = p_jm(random_state(n, rng), basis_cache(n))
            assert abs(dist.total() - 1.0) < 1e-10


def test_p_jm_size_mismatch(basis_cache):
    with pytest.raises(ValueError):
        p_jm(prepare_basis_state(3, 0), basis_cache(4))


def test_t1_rate_examples(basis_cache):
    b8 = basis_cache(8)
    assert t1_rate(p_jm(prepare_basis_state(8, 0), b8)) == pytest.approx(0.0, abs=1e-12)
    uniform = hadamard_all(prepare_basis_state(8, 0))
    assert t1_rate(p_jm(uniform, b8)) == pytest.approx(18.0, abs=1e-9)
    assert t1_rate(JmDistribution(8, {(4.0, 0.0): 1.0})) == 20.0


def test_m_marginal_binomial():
    marg = m_marginal(hadamard_all(prepare_basis_state(8, 0)))
    from math import comb
    np.testing.assert_allclose(marg.probs,
                               [comb(8, k) / 256 for k in range(9)], atol=1e-15)
    assert marg.prob(0.0) == pytest.approx(70 / 256, abs=1e-15)
    with pytest.raises(ValueError):
        marg.prob(0.3)


def test_m_marginal_unchanged_by_phase_oracle():
    # phase flips move no probability between m-sectors; bitwise equal
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        s = random_state(n, rng)
        f = builtin_oracles("parity", n)
        np.testing.assert_array_equal(m_marginal(s).probs,
                                      m_marginal(phase_oracle(s, f)).probs)


def test_t2_rate_examples():
    assert t2_rate(prepare_basis_state(8, 37)) == 0.0
    assert t2_rate(_cat(8)) == pytest.approx(4.0, abs=1e-12)
    uniform = hadamard_all(prepare_basis_state(8, 0))
    assert t2_rate(uniform) == pytest.approx(102960 / 65536, abs=1e-12)


def test_t2_rate_matches_direct_double_sum():
    rng = np.random.default_rng(17)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        s = random_state(n, rng)
        assert abs(t2_rate(s) - _direct_t2(s)) < 1e-12


def test_dephasing_fidelity_at_zero_is_one():
    rng = np.random.default_rng(23)
    for _ in range(10):
        s = random_state(int(rng.integers(1, 9)), rng)
        assert abs(dephasing_fidelity(s, 0.0) - 1.0) < 1e-12


@pytest.mark.parametrize("x", [0.01, 0.1, 1.0])
def test_dephasing_fidelity_cat_closed_form(x):
    expected = np.sqrt(0.5 + 0.5 * np.exp(-8 * x))
    assert dephasing_fidelity(_cat(8), x) == pytest.approx(expected, abs=1e-12)


def test_dephasing_fidelity_first_order_slope():
    x = 1e-6
    for state in (_cat(8), hadamard_all(prepare_basis_state(8, 0))):
        slope = (dephasing_fidelity(state, x) - 1.0) / x
        expected = -t2_rate(state) / 2
        assert abs(slope - expected) < 1e-4 * abs(expected)


def test_dephasing_fidelity_rejects_negative_time():
    with pytest.raises(ValueError):
        dephasing_fidelity(_cat(4), -0.1)


def test_trace_metrics_single_polarized_state(basis_cache):
    trace = trace_metrics([prepare_basis_state(8, 0)], basis_cache(8))
    assert len(trace.steps) == 1
    step = trace.steps[0]
    assert step.index == 0
    assert step.t1 == pytest.approx(0.0, abs=1e-12)
    assert step.t2 == 0.0
    assert step.pjm is None


def test_trace_metrics_labels_and_pjm(basis_cache):
    states = [prepare_basis_state(4, 0), hadamard_all(prepare_basis_state(4, 0))]
    trace = trace_metrics(states, basis_cache(4), labels=["a", "b"],
                          include_pjm=True)
    assert [s.label for s in trace.steps] == ["a", "b"]
    assert all(abs(s.pjm.total() - 1.0) < 1e-10 for s in trace.steps)


def test_trace_metrics_worker_counts_agree_bitwise(basis_cache):
    rng = np.random.default_rng(29)
    states = [random_state(5, rng) for _ in range(12)]
    serial = trace_metrics(states, basis_cache(5), workers=1)
    threaded = trace_metrics(states, basis_cache(5), workers=4)
    for a, b in zip(serial.steps, threaded.steps):
        assert a.t1 == b.t1 and a.t2 == b.t2


def test_trace_metrics_validation(basis_cache):
    with pytest.raises(ValueError):
        trace_metrics([], basis_cache(4))
    with pytest.raises(ValueError):
        trace_metrics([prepare_basis_state(3, 0)], basis_cache(4))
    with pytest.raises(ValueError):
        trace_metrics([prepare_basis_state(4, 0)], basis_cache(4), labels=["a", "b"])
    with pytest.raises(ValueError):
        trace_metrics([prepare_basis_state(4, 0), prepare_basis_state(3, 0)],
                      basis_cache(4))
