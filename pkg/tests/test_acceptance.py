"""Acceptance suite: one test per release criterion.

Numbers 1-8 are exact/analytic checks, 9-15 are simulation-level checks at
desk scale (2000 iterations, seed 1, 1000 m intersite distance unless the
criterion says otherwise), 16 covers the beamformer demo. Known deviations
and their analysis live in the decisions ledger (notes/decisions.md).
"""

import math
from pathlib import Path

import numpy as np
import pytest

from sectorsim import beamforming
from sectorsim.cli import main as cli_main
from sectorsim.engine import CASE_DEFS, SimulationConfig, run_campaign, split_resources
from sectorsim.link import LinkBudget, OrthogonalityProfile, orthogonality, own_cell_interference
from sectorsim.propagation import NoiseConfig, PropagationConfig, path_loss, thermal_noise_dbm
from sectorsim.reporting import (
    probability_no_data,
    relative_gain_db,
    relative_gain_pct,
    site_throughput,
    summarize,
)

ITERATIONS = 2000
SEED = 1
ISD_SWEEP = (250.0, 1000.0, 2000.0, 3000.0)
TREND_TOLERANCE_BPS = 0.5e6


def campaign(case_name: str, isd_m: float = 1000.0):
    case, layout = CASE_DEFS[case_name]
    cfg = SimulationConfig(
        layout=layout, case=case, isd_m=isd_m, iterations=ITERATIONS, master_seed=SEED
    )
    return run_campaign(cfg)


@pytest.fixture(scope="module")
def case_stores():
    return {name: campaign(name) for name in CASE_DEFS}


@pytest.fixture(scope="module")
def isd_mean_cell():
    out = {}
    for name in CASE_DEFS:
        out[name] = [
            float(campaign(name, isd).cell_throughput_samples().mean()) for isd in ISD_SWEEP
        ]
    return out


# --- exact / analytic ------------------------------------------------------

def test_criterion_01_path_loss_reference():
    cfg = PropagationConfig()
    assert path_loss(cfg, 1000.0) == pytest.approx(139.55, abs=0.01)
    assert path_loss(cfg, 2000.0) - path_loss(cfg, 1000.0) == pytest.approx(10.76, abs=0.01)


def test_criterion_02_thermal_noise():
    assert thermal_noise_dbm(NoiseConfig(3.84, 8.0)) == pytest.approx(-100.16, abs=0.01)


def test_criterion_03_orthogonality_profile():
    radius = 1000.0 / math.sqrt(3.0)
    prof = OrthogonalityProfile(0.97, 0.70, radius)
    assert orthogonality(prof, 0.0) == 0.97
    assert orthogonality(prof, radius) == pytest.approx(0.70, abs=1e-12)
    assert orthogonality(prof, radius / 2.0) == pytest.approx(0.8940, abs=1e-4)


def test_criterion_04_own_cell_interference_identity():
    rng = np.random.default_rng(4)
    for _ in range(1000):
        total_tx = rng.uniform(30.0, 45.0)
        loss = rng.uniform(70.0, 160.0)
        share_rx = total_tx - loss - rng.uniform(0.1, 10.0)
        assert own_cell_interference(total_tx, share_rx, loss, 1.0) == 0.0


def test_criterion_05_split_resources():
    codes, power = split_resources(LinkBudget())
    assert codes == 3
    assert power == pytest.approx(34.64, abs=0.01)


def test_criterion_06_relative_gain_arithmetic():
    assert relative_gain_db(8.94, 1.44) == pytest.approx(7.50)
    assert relative_gain_pct(22.81, 10.90) == pytest.approx(109.27, abs=0.005)
    assert site_throughput(10.90, 3) == pytest.approx(32.70)


def test_criterion_07_percentile_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        x = rng.normal(rng.uniform(-10, 10), rng.uniform(0.5, 20), rng.integers(3, 500))
        s = summarize(x)
        xs = np.sort(x)
        for q, got in [(0.10, s.p10), (0.50, s.p50), (0.90, s.p90)]:
            pos = q * (xs.size - 1)
            lo, hi = int(np.floor(pos)), int(np.ceil(pos))
            expected = xs[lo] + (pos - lo) * (xs[hi] - xs[lo])
            assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_criterion_08_determinism_across_workers(tmp_path):
    # byte-identical CLI outputs for the same configuration, workers 1 vs 4;
    # manifest.json is excluded (it embeds the run timestamp, see ledger)
    outs = {}
    for workers in (1, 4):
        out = tmp_path / f"w{workers}"
        rc = cli_main(
            [
                "simulate", "--iterations", "40", "--seed", "11",
                "--workers", str(workers), "--out", str(out),
            ]
        )
        assert rc == 0
        outs[workers] = out
    names = sorted(p.name for p in outs[1].iterdir())
    assert names == sorted(p.name for p in outs[4].iterdir())
    for name in names:
        if name == "manifest.json":
            continue
        assert (outs[1] / name).read_bytes() == (outs[4] / name).read_bytes(), name


# --- simulation level ------------------------------------------------------

def test_criterion_09_mean_sinr_ordering(case_stores):
    mean = {c: case_stores[c].user_sinr_samples().mean() for c in case_stores}
    fixed_best = max(mean["3-sector"], mean["6-sector"], mean["12-sector"])
    assert mean["adaptive"] > mean["switched"] > fixed_best
    assert 8.0 <= mean["adaptive"] - mean["3-sector"] <= 13.0
    assert 5.0 <= mean["switched"] - mean["3-sector"] <= 10.0


def test_criterion_10_sectorization_near_parity(case_stores):
    mean = {c: case_stores[c].user_sinr_samples().mean() for c in case_stores}
    assert abs(mean["6-sector"] - mean["3-sector"]) <= 2.0
    assert abs(mean["12-sector"] - mean["3-sector"]) <= 2.0


def test_criterion_11_probability_of_no_data(case_stores):
    p = {c: probability_no_data(case_stores[c].user_throughput_samples()) for c in case_stores}
    assert 0.08 <= p["3-sector"] <= 0.25
    assert p["switched"] <= 0.08
    assert p["adaptive"] <= 0.02
    assert p["3-sector"] > p["switched"] > p["adaptive"]


def test_criterion_12_cell_throughput_gains(case_stores):
    mean = {c: case_stores[c].cell_throughput_samples().mean() for c in case_stores}
    switched_gain = relative_gain_pct(mean["switched"], mean["3-sector"])
    adaptive_gain = relative_gain_pct(mean["adaptive"], mean["3-sector"])
    assert 60.0 <= switched_gain <= 160.0
    assert 100.0 <= adaptive_gain <= 220.0


def _trend_violations(series, direction: str):
    """Adjacent pairs breaking the trend, as (magnitude, index) tuples."""
    diffs = np.diff(series)
    if direction == "non-decreasing":
        bad = np.nonzero(diffs < 0)[0]
    else:
        bad = np.nonzero(diffs > 0)[0]
    return [(abs(float(diffs[i])), int(i)) for i in bad]


@pytest.mark.parametrize("case_name", ["3-sector", "6-sector", "12-sector", "switched"])
def test_criterion_13_throughput_rises_with_isd(isd_mean_cell, case_name):
    # Known honest failure: in this scale-free interference model the SINR
    # distribution is invariant to the intersite distance except for the
    # noise floor, which only hurts large distances, so mean cell throughput
    # cannot rise with spacing. See notes/decisions.md for the analysis.
    series = isd_mean_cell[case_name]
    violations = _trend_violations(series, "non-decreasing")
    assert len(violations) <= 1 and all(v <= TREND_TOLERANCE_BPS for v, _ in violations), (
        f"{case_name} mean cell throughput vs ISD {ISD_SWEEP}: "
        f"{[round(v / 1e6, 3) for v in series]} Mbps; "
        f"declines at {len(violations)} adjacent pairs "
        f"(magnitudes {[round(v / 1e6, 3) for v, _ in violations]} Mbps); "
        "see notes/decisions.md (ISD trend)"
    )


def test_criterion_13_adaptive_declines_with_isd(isd_mean_cell):
    series = isd_mean_cell["adaptive"]
    violations = _trend_violations(series, "non-increasing")
    assert len(violations) <= 1 and all(v <= TREND_TOLERANCE_BPS for v, _ in violations), (
        f"adaptive mean cell throughput vs ISD {ISD_SWEEP}: "
        f"{[round(v / 1e6, 3) for v in series]} Mbps"
    )


def test_criterion_14_site_vs_cell_consistency(isd_mean_cell):
    for name in CASE_DEFS:
        sectors = CASE_DEFS[name][1].sectors_per_site
        for mean_cell in isd_mean_cell[name]:
            assert site_throughput(mean_cell, sectors) == sectors * mean_cell


def test_criterion_15_throughput_quantization(case_stores):
    expected = {
        round(rate * 3 * 2, 3)
        for rate in (0.24e6, 0.36e6, 0.48e6, 0.64e6, 0.72e6, 0.96e6, 1.08e6, 1.20e6)
    }
    assert len(expected) == 8
    for name, store in case_stores.items():
        positive = np.unique(store.user_throughput_samples())
        positive = positive[positive > 0]
        assert {round(float(v), 3) for v in positive} <= expected, name


# --- beamforming demo ------------------------------------------------------

def test_criterion_16_lms_converges_to_oracle():
    demo = beamforming.convergence_demo(steps=2000)
    gap_db = demo["lms_mse_db"] - demo["wiener_mse_db"]
    assert gap_db <= 3.0
    windowed = beamforming.windowed_mse(demo["sq_err"], window=100)
    assert np.all(np.diff(windowed) <= 0.0)
