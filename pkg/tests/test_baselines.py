import numpy as np
import pytest

from learn2mac.baselines import (
    AlohaParams,
    PeriodicAlohaParams,
    TdmaSchedule,
    aloha_pattern,
    calibrate_energy_matched_q,
    periodic_q,
    tdma_pattern,
)
from learn2mac.patterns import pattern_to_str
from learn2mac.rng import make_rng


def test_aloha_extremes():
    rng = make_rng(0)
    assert not aloha_pattern(AlohaParams(0.0), 20, rng).any()
    assert aloha_pattern(AlohaParams(1.0), 20, rng).all()


def test_aloha_mean_weight():
    rng = make_rng(42)
    w = [aloha_pattern(AlohaParams(0.2), 20, rng).sum() for _ in range(10_000)]
    assert np.mean(w) == pytest.approx(4.0, abs=0.1)


def test_aloha_params_range():
    with pytest.raises(ValueError):
        AlohaParams(1.2)
    with pytest.raises(ValueError):
        AlohaParams(-0.1)


def test_periodic_q_values():
    prm = PeriodicAlohaParams(q0=0.25, A=0.15, P=2000)
    assert periodic_q(2000, prm) == pytest.approx(0.25, abs=1e-12)
    assert periodic_q(4000, prm) == pytest.approx(0.25, abs=1e-12)
    assert periodic_q(500, prm) == pytest.approx(0.40, abs=1e-12)
    assert periodic_q(1500, prm) == pytest.approx(0.10, abs=1e-12)
    qs = periodic_q(np.arange(1, 4001), prm)
    assert qs.min() >= 0.10 - 1e-12 and qs.max() <= 0.40 + 1e-12


def test_periodic_params_range():
    with pytest.raises(ValueError):
        PeriodicAlohaParams(q0=0.1, A=0.2, P=10)
    with pytest.raises(ValueError):
        PeriodicAlohaParams(q0=0.9, A=0.2, P=10)
    with pytest.raises(ValueError):
        PeriodicAlohaParams(P=0)


def test_tdma_patterns():
    assert not tdma_pattern(TdmaSchedule(), 20).any()
    assert pattern_to_str(tdma_pattern(TdmaSchedule(range(10)), 20)) == "11111111110000000000"
    assert tdma_pattern(TdmaSchedule(range(20)), 20).all()
    sched = TdmaSchedule({3, 7})
    assert all(np.array_equal(tdma_pattern(sched, 10), tdma_pattern(sched, 10)) for _ in range(5))
    with pytest.raises(ValueError):
        tdma_pattern(TdmaSchedule({20}), 20)


@pytest.mark.parametrize("energy, expected", [(2.0, 0.1), (0, 0.0), (20, 1.0)])
def test_energy_calibration(energy, expected):
    assert calibrate_energy_matched_q(energy, 20) == pytest.approx(expected)


def test_energy_calibration_range():
    with pytest.raises(ValueError):
        calibrate_energy_matched_q(21, 20)
    with pytest.raises(ValueError):
        calibrate_energy_matched_q(-1, 20)


def test_calibrated_aloha_matches_binomial_mean():
    q = calibrate_energy_matched_q(2.0, 20)
    rng = make_rng(8)
    w = np.array([aloha_pattern(AlohaParams(q), 20, rng).sum() for _ in range(20_000)])
    assert w.mean() == pytest.approx(2.0, rel=0.02)
