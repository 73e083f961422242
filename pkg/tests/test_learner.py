import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from learn2mac.learner import (
    Learn2MACDevice,
    counterfactual_rewards,
    default_learning_rate,
    eg_update,
    sample_pattern,
    subgradient,
)
from learn2mac.medium import resolve_frame
from learn2mac.patterns import Dictionary, DictionaryConfig, generate_dictionary
from learn2mac.patterns import pattern_from_str as P
from learn2mac.rng import make_rng

DICT = Dictionary.from_strings(["0000", "1100", "1010", "1111", "0011"])


def test_counterfactual_rewards():
    avail = P("1010")
    R = counterfactual_rewards(avail, DICT, L=2)
    assert R.tolist() == [0, 0, 1, 1, 0]
    assert counterfactual_rewards(P("1111"), DICT, L=2).tolist() == [0, 1, 1, 1, 1]
    assert counterfactual_rewards(P("1111"), DICT, L=1)[0] == 0


def test_subgradient_values():
    dct = Dictionary.from_strings(["0000", "1100", "1111"])
    v = subgradient([0, 1, 0], dct, 0.05)
    assert v[0] == 0.0
    assert v[1] == pytest.approx(0.9, abs=1e-15)
    assert v[2] == pytest.approx(-0.2, abs=1e-15)


def test_subgradient_bounds():
    dct = generate_dictionary(DictionaryConfig(20, 2, 100, seed=4))
    rng = make_rng(0)
    for _ in range(200):
        avail = (rng.random(20) < 0.5).astype(np.uint8)
        v = subgradient(counterfactual_rewards(avail, dct, 2), dct, 0.05)
        assert v[0] == 0.0
        assert np.all(v >= -0.05 * 20) and np.all(v <= 1.0)


def test_two_point_closed_form():
    out = eg_update([0.5, 0.5], [1.0, 0.0], 1.0)
    e = math.e
    assert out[0] == pytest.approx(e / (1 + e), abs=1e-5)
    assert out[1] == pytest.approx(1 / (1 + e), abs=1e-5)
    np.testing.assert_allclose(out, [0.73106, 0.26894], atol=1e-5)


def test_no_change_cases():
    p = np.array([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_allclose(eg_update(p, [3.0, 3.0, 3.0, 3.0], 0.7), p, atol=1e-15)
    np.testing.assert_allclose(eg_update(p, [1.0, -2.0, 0.5, 0.0], 0.0), p, atol=1e-15)


def test_huge_exponents_do_not_overflow():
    out = eg_update([0.5, 0.5], [1e6, -1e6], 10.0)
    assert np.all(np.isfinite(out))
    assert out.tolist() == [1.0, 0.0]


simplex_inputs = st.integers(2, 30).flatmap(
    lambda d: st.tuples(
        arrays(np.float64, d, elements=st.floats(1e-6, 1.0)),
        arrays(np.float64, d, elements=st.floats(-1.0, 1.0)),
        st.floats(0.0, 5.0),
        st.floats(-50.0, 50.0),
    )
)


@settings(max_examples=300, deadline=None)
@given(simplex_inputs)
def test_shift_invariance(args):
    w, v, alpha, c = args
    p = w / w.sum()
    np.testing.assert_allclose(eg_update(p, v, alpha), eg_update(p, v + c, alpha), atol=1e-9, rtol=0)


@settings(max_examples=300, deadline=None)
@given(simplex_inputs)
def test_monotone_reweighting(args):
    w, v, alpha, _ = args
    alpha = max(alpha, 1e-3)
    p = w / w.sum()
    q = eg_update(p, v, alpha)
    for i in range(len(p)):
        for j in range(len(p)):
            if v[i] - v[j] > 1e-9:
                assert q[i] / q[j] > p[i] / p[j]


def test_simplex_preserved_over_many_updates():
    rng = make_rng(5)
    chains, steps, d = 1000, 1000, 20
    p = rng.dirichlet(np.ones(d), size=chains)
    worst_sum = worst_min = 0.0
    for _ in range(steps):
        v = rng.uniform(-1.0, 1.0, size=(chains, d))
        alpha = rng.uniform(0.0, 2.0, size=chains)
        p = eg_update(p, v, alpha)
        worst_sum = max(worst_sum, float(np.abs(p.sum(axis=1) - 1.0).max()))
        worst_min = min(worst_min, float(p.min()))
    assert worst_sum <= 1e-12
    assert worst_min >= 0.0


@pytest.mark.parametrize(
    "p, u, expected",
    [([0, 0, 0, 1, 0], 0.999, 3), ([0, 0, 0, 1, 0], 0.0, 3), ([0.5, 0.5], 0.25, 0), ([0.5, 0.5], 0.75, 1)],
)
def test_sample_pattern(p, u, expected):
    assert sample_pattern(p, u) == expected


def test_sample_pattern_rounding_guard():
    # mass sums just below u: fall back to the last supported index
    assert sample_pattern([0.3, 0.3, 0.3999999, 0.0], 0.99999999) == 2


def test_sample_pattern_frequencies():
    p = np.array([0.1, 0.0, 0.6, 0.3])
    u = make_rng(1).random(200_000)
    idx = sample_pattern(np.broadcast_to(p, (len(u), 4)), u)
    freq = np.bincount(idx, minlength=4) / len(u)
    np.testing.assert_allclose(freq, p, atol=0.005)
    assert freq[1] == 0


def test_default_learning_rate():
    assert default_learning_rate(30000, 0.05, 20) == pytest.approx(8.1650e-3, abs=1e-7)
    assert default_learning_rate(30000, 0.1, 20) == pytest.approx(4.0825e-3, abs=1e-7)
    for T, eta, N in [(30000, 0.05, 20), (100, 0.3, 10), (1, 0.01, 5)]:
        assert default_learning_rate(T, eta, N) == pytest.approx(math.sqrt(2 / (T * max(1, eta**2 * N**2))))
    with pytest.raises(ValueError):
        default_learning_rate(0, 0.05, 20)


def test_device_prefers_free_patterns():
    # background holds slots 0,1; only patterns using 2,3 can succeed
    dct = Dictionary.from_strings(["0000", "1100", "0011", "1111"])
    dev = Learn2MACDevice(dct, L=2, eta=0.05, alpha=0.05)
    bg = P("1100")
    rng = make_rng(0)
    for _ in range(1000):
        dev.choose(rng.random())
        dev.observe(resolve_frame([dev.pattern, bg]).feedback)
    assert np.argmax(dev.p) == 2
    assert dev.p[2] > 0.9


def test_device_first_frame_uses_uniform_start():
    dct = Dictionary.from_strings(["0000", "1100", "0011", "1111"])
    dev = Learn2MACDevice(dct, L=2, T=1000)
    assert dev.alpha == pytest.approx(default_learning_rate(1000, 0.05, 4))
    dev.choose(0.6)
    assert dev.last_index == 2
    np.testing.assert_array_equal(dev.p, np.full(4, 0.25))
