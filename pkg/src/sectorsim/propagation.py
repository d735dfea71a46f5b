"""Path loss, shadow fading, receiver noise and link-budget composition.

Path loss is the COST-231 urban extension of the Hata model, the only
Hata-family formula defined near the 2100 MHz band used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def dbm_to_mw(dbm):
    return 10.0 ** (np.asarray(dbm, dtype=float) / 10.0)


def mw_to_dbm(mw):
    return 10.0 * np.log10(mw)


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


@dataclass(frozen=True)
class PropagationConfig:
    frequency_mhz: float = 2100.0
    bs_height_m: float = 25.0
    ms_height_m: float = 1.5
    city_correction_db: float = 0.0
    shadowing_std_db: float = 5.0
    shadowing_mean_db: float = 0.0
    min_distance_m: float = 35.0  # clamp floor against near-field blow-up

    def __post_init__(self):
        if not 1500.0 <= self.frequency_mhz <= 2200.0:
            raise ValueError(f"frequency_mhz {self.frequency_mhz} outside the urban Hata extension range [1500, 2200]")
        if self.bs_height_m <= 0 or self.ms_height_m <= 0:
            raise ValueError("antenna heights must be positive")
        if self.shadowing_std_db < 0:
            raise ValueError("shadowing_std_db must be non-negative")


@dataclass(frozen=True)
class NoiseConfig:
    chip_rate_mcps: float = 3.84
    ue_noise_figure_db: float = 8.0

    def __post_init__(self):
        if self.chip_rate_mcps <= 0:
            raise ValueError("chip_rate_mcps must be positive")


def path_loss(cfg: PropagationConfig, distance_m) -> float:
    """COST-231 Hata urban path loss in dB; accepts scalars or arrays.

    Distances below cfg.min_distance_m are evaluated at the clamp floor.
    """
    d_km = np.maximum(np.asarray(distance_m, dtype=float), cfg.min_distance_m) / 1000.0
    log_f = math.log10(cfg.frequency_mhz)
    log_hb = math.log10(cfg.bs_height_m)
    a_hm = (1.1 * log_f - 0.7) * cfg.ms_height_m - (1.56 * log_f - 0.8)
    loss = (
        46.3
        + 33.9 * log_f
        - 13.82 * log_hb
        - a_hm
        + (44.9 - 6.55 * log_hb) * np.log10(d_km)
        + cfg.city_correction_db
    )
    return loss if loss.ndim else float(loss)


def shadowing_sample(rng: np.random.Generator, cfg: PropagationConfig, size=None):
    """Log-normal shadow fading drawn in the dB domain."""
    return rng.normal(cfg.shadowing_mean_db, cfg.shadowing_std_db, size)


def thermal_noise_dbm(cfg: NoiseConfig) -> float:
    """Receiver noise floor over the chip-rate bandwidth, noise figure included."""
    return -174.0 + 10.0 * math.log10(cfg.chip_rate_mcps * 1e6) + cfg.ue_noise_figure_db


def received_power(tx_power_dbm, tx_gain_db, loss_db, shadow_db):
    return tx_power_dbm + tx_gain_db - loss_db + shadow_db
