"""Tests for path loss, shadow fading and the receiver noise floor."""

import math

import numpy as np
import pytest

from sectorsim.propagation import (
    NoiseConfig,
    PropagationConfig,
    db_to_linear,
    dbm_to_mw,
    mw_to_dbm,
    path_loss,
    received_power,
    shadowing_sample,
    thermal_noise_dbm,
)


def reference_cfg(**kw):
    return PropagationConfig(**kw)


def test_unit_conversions():
    assert dbm_to_mw(0.0) == pytest.approx(1.0)
    assert dbm_to_mw(30.0) == pytest.approx(1000.0)
    assert mw_to_dbm(1.0) == pytest.approx(0.0)
    assert db_to_linear(3.0) == pytest.approx(10.0 ** 0.3)
    assert mw_to_dbm(dbm_to_mw(-87.3)) == pytest.approx(-87.3)


def test_path_loss_reference_point():
    # closed-form hand evaluation at 2100 MHz, 25 m BS, 1.5 m MS, C=0, 1 km
    assert path_loss(reference_cfg(), 1000.0) == pytest.approx(139.55, abs=0.01)


def test_path_loss_distance_slope():
    cfg = reference_cfg()
    # slope per distance doubling: (44.9 - 6.55*log10(25)) * log10(2) = 10.76 dB
    delta = path_loss(cfg, 2000.0) - path_loss(cfg, 1000.0)
    assert delta == pytest.approx(10.76, abs=0.01)


def test_path_loss_closed_form_against_independent_formula():
    cfg = reference_cfg(frequency_mhz=1800.0, bs_height_m=30.0, ms_height_m=1.5, city_correction_db=3.0)
    d_km = 2.5
    log_f = math.log10(1800.0)
    a_hm = (1.1 * log_f - 0.7) * 1.5 - (1.56 * log_f - 0.8)
    expected = (
        46.3 + 33.9 * log_f - 13.82 * math.log10(30.0) - a_hm
        + (44.9 - 6.55 * math.log10(30.0)) * math.log10(d_km) + 3.0
    )
    assert path_loss(cfg, d_km * 1000.0) == pytest.approx(expected, abs=1e-9)


def test_path_loss_min_distance_clamp():
    cfg = reference_cfg()
    assert path_loss(cfg, 1.0) == path_loss(cfg, 35.0)
    assert path_loss(cfg, 36.0) > path_loss(cfg, 35.0)


def test_path_loss_vectorized():
    cfg = reference_cfg()
    d = np.array([100.0, 500.0, 1000.0])
    losses = path_loss(cfg, d)
    assert losses.shape == (3,)
    assert np.all(np.diff(losses) > 0.0)
    assert losses[2] == pytest.approx(path_loss(cfg, 1000.0))


def test_propagation_config_validation():
    with pytest.raises(ValueError):
        PropagationConfig(frequency_mhz=900.0)  # below the urban extension band
    with pytest.raises(ValueError):
        PropagationConfig(bs_height_m=0.0)
    with pytest.raises(ValueError):
        PropagationConfig(shadowing_std_db=-1.0)


def test_thermal_noise_reference():
    assert thermal_noise_dbm(NoiseConfig()) == pytest.approx(-100.16, abs=0.01)
    # without noise figure: kTB over 3.84 MHz
    assert thermal_noise_dbm(NoiseConfig(ue_noise_figure_db=0.0)) == pytest.approx(
        -174.0 + 10.0 * math.log10(3.84e6)
    )


def test_shadowing_statistics():
    cfg = reference_cfg(shadowing_std_db=5.0)
    rng = np.random.default_rng(1234)
    samples = shadowing_sample(rng, cfg, 200_000)
    assert samples.mean() == pytest.approx(0.0, abs=0.05)
    assert samples.std() == pytest.approx(5.0, abs=0.05)


def test_shadowing_deterministic_per_seed():
    cfg = reference_cfg()
    a = shadowing_sample(np.random.default_rng(7), cfg, 10)
    b = shadowing_sample(np.random.default_rng(7), cfg, 10)
    assert np.array_equal(a, b)


def test_received_power_composition():
    # Table I sector power through the reference path loss at boresight
    assert received_power(41.63, 15.39, 139.55, 0.0) == pytest.approx(-82.53)
    assert received_power(41.63, 15.39, 139.55, 4.0) == pytest.approx(-78.53)
