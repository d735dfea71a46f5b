"""Downlink link model: interference decomposition, orthogonality, SINR, AMC.

All interference arithmetic is done in linear power (mW); SINR is returned
in dB without processing gain, which is absorbed into the MCS thresholds.
"""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .propagation import dbm_to_mw

# HS-PDSCH spreading factor 16 on a 3.84 Mcps carrier.
SYMBOL_RATE_PER_CODE = 3.84e6 / 16.0

_BITS_PER_SYMBOL = {"QPSK": 2, "16QAM": 4, "64QAM": 6}


@dataclass(frozen=True)
class LinkBudget:
    hs_pdsch_power_dbm: float = 41.63
    hs_scch_power_dbm: float = 26.0
    total_codes: int = 15
    users_per_tti: int = 5
    loading: float = 0.70
    activity_factor: float = 1.0
    carriers: int = 2
    processing_gain_db: float = 12.04
    interference_margin_db: float = 5.2  # informational, never applied

    def __post_init__(self):
        if not 0.0 < self.loading <= 1.0:
            raise ValueError(f"loading must be in (0, 1], got {self.loading}")
        if not 0.0 < self.activity_factor <= 1.0:
            raise ValueError(f"activity_factor must be in (0, 1], got {self.activity_factor}")
        if self.total_codes < 1 or self.users_per_tti < 1 or self.carriers < 1:
            raise ValueError("total_codes, users_per_tti and carriers must be at least 1")
        margin = 10.0 * math.log10(1.0 / (1.0 - self.loading)) if self.loading < 1.0 else float("inf")
        if abs(margin - self.interference_margin_db) > 0.1:
            raise ValueError(
                f"interference_margin_db {self.interference_margin_db} inconsistent with loading "
                f"{self.loading} (implies {margin:.2f} dB)"
            )

    @property
    def total_tx_power_dbm(self) -> float:
        """Sector power seen as interference: HS-PDSCH plus HS-SCCH, linear sum."""
        total_mw = dbm_to_mw(self.hs_pdsch_power_dbm) + dbm_to_mw(self.hs_scch_power_dbm)
        return float(10.0 * math.log10(total_mw))


@dataclass(frozen=True)
class McsEntry:
    modulation: str
    code_rate: float
    sinr_threshold_db: float

    @property
    def per_code_rate_bps(self) -> float:
        return SYMBOL_RATE_PER_CODE * _BITS_PER_SYMBOL[self.modulation] * self.code_rate


def default_mcs_table() -> tuple[McsEntry, ...]:
    """Eight-level AMC ladder from QPSK 1/2 up to 64QAM 5/6.

    Per-code rates are strictly increasing (0.24 to 1.20 Mbps). Thresholds are
    on the geometry-scale SINR of this simulator (no processing gain) and stay
    fully configurable; the defaults are calibrated on the 3-sector reference
    network at 1000 m spacing so that about 15% of users fall below the ladder
    and about 4.5% reach 64QAM. The wide lowest step reflects QPSK 1/2 with
    aggressive retransmission covering most of the low-quality margin.
    """
    return (
        McsEntry("QPSK", 1 / 2, -14.0),
        McsEntry("QPSK", 3 / 4, -4.0),
        McsEntry("16QAM", 1 / 2, -1.0),
        McsEntry("16QAM", 2 / 3, 2.0),
        McsEntry("64QAM", 1 / 2, 5.0),
        McsEntry("64QAM", 2 / 3, 7.0),
        McsEntry("64QAM", 3 / 4, 9.0),
        McsEntry("64QAM", 5 / 6, 11.0),
    )


def validate_mcs_table(table: tuple[McsEntry, ...]) -> tuple[McsEntry, ...]:
    if not table:
        raise ValueError("MCS table must not be empty")
    for lo, hi in zip(table, table[1:]):
        if hi.sinr_threshold_db <= lo.sinr_threshold_db:
            raise ValueError("MCS thresholds must be strictly increasing")
        if hi.per_code_rate_bps <= lo.per_code_rate_bps:
            raise ValueError("MCS per-code rates must be strictly increasing")
    return table


def mcs_table_from_csv(path) -> tuple[McsEntry, ...]:
    """Load an override ladder from columns modulation, code_rate, threshold_db."""
    entries = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        expected = {"modulation", "code_rate", "threshold_db"}
        if reader.fieldnames is None or set(reader.fieldnames) != expected:
            raise ValueError(f"MCS CSV must have columns {sorted(expected)}")
        for row in reader:
            mod = row["modulation"].strip()
            if mod not in _BITS_PER_SYMBOL:
                raise ValueError(f"unknown modulation {mod!r}")
            entries.append(McsEntry(mod, float(row["code_rate"]), float(row["threshold_db"])))
    return validate_mcs_table(tuple(entries))


def select_mcs(table: tuple[McsEntry, ...], sinr_db: float) -> McsEntry | None:
    """Highest entry whose threshold is <= sinr_db; None means no data transfer."""
    if not table:
        raise ValueError("MCS table must not be empty")
    idx = bisect.bisect_right([e.sinr_threshold_db for e in table], sinr_db) - 1
    return table[idx] if idx >= 0 else None


def user_throughput(entry: McsEntry | None, codes_per_user: int, carriers: int) -> float:
    if codes_per_user < 0:
        raise ValueError("codes_per_user must be non-negative")
    if entry is None:
        return 0.0
    return entry.per_code_rate_bps * codes_per_user * carriers


@dataclass(frozen=True)
class OrthogonalityProfile:
    alpha_at_site: float = 0.97
    alpha_at_edge: float = 0.70
    cell_radius_m: float = 1000.0 / math.sqrt(3.0)

    def __post_init__(self):
        if not 0.0 < self.alpha_at_edge <= self.alpha_at_site <= 1.0:
            raise ValueError("need 0 < alpha_at_edge <= alpha_at_site <= 1")


def orthogonality(profile: OrthogonalityProfile, distance_m):
    """Gaussian-shaped decay from alpha_at_site to alpha_at_edge at the cell radius."""
    d = np.minimum(np.asarray(distance_m, dtype=float), profile.cell_radius_m)
    decay = math.log(profile.alpha_at_site / profile.alpha_at_edge)
    alpha = profile.alpha_at_site * np.exp(-((d / profile.cell_radius_m) ** 2) * decay)
    return alpha if alpha.ndim else float(alpha)


def own_cell_interference_mw(total_rx_mw, user_rx_mw, alpha):
    """De-orthogonalized own-sector interference from received powers in mW."""
    alpha_arr = np.asarray(alpha, dtype=float)
    if np.any(alpha_arr < 0.0) or np.any(alpha_arr > 1.0):
        raise ValueError("alpha must lie in [0, 1]")
    out = np.maximum(np.asarray(total_rx_mw, dtype=float) - user_rx_mw, 0.0) * (1.0 - alpha_arr)
    return out if out.ndim else float(out)


def own_cell_interference(total_tx_dbm, serving_rx_dbm, loss_serving_db, alpha):
    """Own-sector interference in mW for a single-beam (fixed-pattern) sector.

    The whole sector power arrives through the serving path loss; the user's
    own HS-PDSCH share is removed and the remainder is de-orthogonalized.
    Beamformed sectors instead compose the received total per beam and use
    own_cell_interference_mw directly.
    """
    total_rx_mw = dbm_to_mw(np.asarray(total_tx_dbm, dtype=float) - loss_serving_db)
    return own_cell_interference_mw(total_rx_mw, dbm_to_mw(serving_rx_dbm), alpha)


def other_cell_interference(interferer_rx_mw, loading: float, activity: float) -> float:
    powers = np.asarray(interferer_rx_mw, dtype=float)
    if powers.size and np.any(powers < 0.0):
        raise ValueError("interferer powers must be non-negative")
    return float(loading * activity * powers.sum())


def sinr(user_rx_mw, i_own_mw, i_other_mw, noise_mw):
    """Eq-of-merit signal quality in dB, no processing gain applied."""
    s = np.asarray(user_rx_mw, dtype=float)
    denom = np.asarray(i_own_mw, dtype=float) + np.asarray(i_other_mw, dtype=float) + noise_mw
    if np.any(s <= 0.0):
        raise ValueError("user received power must be positive")
    if np.any(denom <= 0.0):
        raise ValueError("interference-plus-noise must be positive")
    out = 10.0 * np.log10(s / denom)
    return out if out.ndim else float(out)


def shannon_capacity(bandwidth_hz: float, snr_linear: float) -> float:
    if snr_linear < 0:
        raise ValueError("snr_linear must be non-negative")
    return bandwidth_hz * math.log2(1.0 + snr_linear)


def switched_beam_gain_bound(num_beams: int) -> float:
    """Ideal gain of a U-beam switched antenna over a single wide beam."""
    if num_beams < 1:
        raise ValueError("num_beams must be at least 1")
    return 10.0 * math.log10(num_beams)
