import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridloc.channel import (
    ChannelParams,
    OutOfModelRange,
    RssiSample,
    distance_from_rssi,
    path_loss,
    reference_path_loss,
    rssi_at,
    sample_shadowing,
)

# 20*log10(4*pi*f/c) at f = 2.4 GHz, evaluated with mpmath at 30 digits
PL_1M_2G4 = 40.05200805611549


def params(**kw):
    base = dict(n=2.27, sigma=0.0, d0=1.0, freq_hz=2.4e9, tx_power_dbm=20.0)
    base.update(kw)
    return ChannelParams(**base)


def test_reference_path_loss_2g4():
    assert reference_path_loss(params()) == pytest.approx(PL_1M_2G4, abs=1e-9)


@pytest.mark.parametrize("freq", [9e8, 2.4e9, 5.8e9])
def test_reference_path_loss_unit_argument(freq):
    lam = 299_792_458.0 / freq
    assert reference_path_loss(params(freq_hz=freq, d0=lam / (4 * math.pi))) == pytest.approx(0.0, abs=1e-12)
    assert reference_path_loss(params(freq_hz=freq, d0=10 * lam / (4 * math.pi))) == pytest.approx(20.0, abs=1e-12)


def test_path_loss_at_reference_distance():
    p = params(d0=2.0)
    assert path_loss(p, 2.0, 0.0) == reference_path_loss(p)


def test_path_loss_office_exponent_decade():
    p = params(n=2.27)
    assert path_loss(p, 10.0, 0.0) == pytest.approx(reference_path_loss(p) + 22.7, abs=1e-12)


def test_path_loss_with_shadowing():
    p = params(n=2.0)
    assert path_loss(p, 4.0, 3.0) - reference_path_loss(p) == pytest.approx(15.041199826559248, abs=1e-12)


def test_path_loss_below_reference_distance():
    with pytest.raises(OutOfModelRange):
        path_loss(params(d0=1.0), 0.5)


@pytest.mark.parametrize(
    "kw", [dict(n=0.0), dict(n=-1.0), dict(sigma=-0.1), dict(d0=0.0), dict(freq_hz=0.0)]
)
def test_params_invariants(kw):
    with pytest.raises(ValueError):
        params(**kw)


def test_shadowing_zero_sigma():
    rng = np.random.default_rng(3)
    assert all(sample_shadowing(params(sigma=0.0), rng) == 0.0 for _ in range(100))


def test_shadowing_statistics():
    rng = np.random.default_rng(12345)
    p = params(sigma=4.0)
    draws = np.array([sample_shadowing(p, rng) for _ in range(100_000)])
    assert abs(draws.mean()) < 0.05
    assert draws.std() == pytest.approx(4.0, rel=0.02)


def test_shadowing_deterministic():
    p = params(sigma=6.0)
    r1, r2 = np.random.default_rng(99), np.random.default_rng(99)
    assert [sample_shadowing(p, r1) for _ in range(50)] == [sample_shadowing(p, r2) for _ in range(50)]


def test_distance_from_rssi_at_reference():
    p = params()
    rssi = p.tx_power_dbm - reference_path_loss(p)
    assert distance_from_rssi(p, RssiSample(rssi, 0)) == pytest.approx(1.0, rel=1e-12)


def test_distance_from_rssi_clamps_strong_signal():
    p = params(d0=1.5)
    rssi = p.tx_power_dbm - reference_path_loss(p) + 5.0
    assert distance_from_rssi(p, RssiSample(rssi, 1)) == 1.5


@settings(max_examples=500, deadline=None)
@given(
    n=st.sampled_from([1.71, 2.13, 2.27, 3.5]),
    d0=st.sampled_from([0.5, 1.0, 2.0]),
    freq=st.sampled_from([2.4e9, 5.0e9]),
    log_ratio=st.floats(min_value=0.0, max_value=4.0),
)
def test_round_trip(n, d0, freq, log_ratio):
    p = params(n=n, d0=d0, freq_hz=freq)
    d = d0 * 10.0**log_ratio
    if d > 1e4:
        d = 1e4
    got = distance_from_rssi(p, RssiSample(rssi_at(p, d), 0))
    assert got == pytest.approx(d, rel=1e-9)


def test_monotonicity():
    p = params()
    ds = np.logspace(0, 3, 200)
    losses = [path_loss(p, d) for d in ds]
    assert all(b > a for a, b in zip(losses, losses[1:]))
    floor = p.tx_power_dbm - reference_path_loss(p)
    rssis = np.linspace(floor - 80.0, floor - 0.01, 200)
    dists = [distance_from_rssi(p, RssiSample(r, 0)) for r in rssis]
    assert all(b < a for a, b in zip(dists, dists[1:]))


def test_median_distance_unbiased_under_shadowing():
    p = params(sigma=6.0)
    rng = np.random.default_rng(2024)
    true_d = 12.0
    est = np.array(
        [distance_from_rssi(p, RssiSample(rssi_at(p, true_d, sample_shadowing(p, rng)), 0)) for _ in range(20_000)]
    )
    # median of a log-normal with log-median log(d): standard error ~ 1.25 * sd / sqrt(N) in log space
    assert np.median(est) == pytest.approx(true_d, rel=0.03)
    assert est.mean() > true_d * 1.1
