"""Horizontal radiation patterns for the five simulated antenna cases.

The main lobe is parabolic in dB with a hard front-to-back floor; only the
half-power beamwidth and peak gain are modeled, sidelobes are not.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .geometry import LayoutKind, wrap_angle


class BeamKind(Enum):
    FIXED = "fixed"
    SWITCHED = "switched"
    ADAPTIVE = "adaptive"


# Average sidelobe suppression of the high-gain array beams. Narrow beams
# formed by an antenna array do not reach the 25 dB front-to-back ratio of a
# wide single-column sector antenna; 20 dB is a typical tapered-array level.
BEAM_SIDELOBE_DB = 22.0


@dataclass(frozen=True)
class AntennaStrategy:
    kind: BeamKind
    gain_max_dbi: float
    hpbw_deg: float
    front_to_back_db: float = 25.0
    beam_centers_deg: tuple[float, ...] = field(default_factory=tuple)
    sidelobe_db: float = float("inf")

    def __post_init__(self):
        if self.gain_max_dbi <= 0 or self.hpbw_deg <= 0 or self.front_to_back_db <= 0:
            raise ValueError("gain_max_dbi, hpbw_deg and front_to_back_db must all be positive")
        if self.sidelobe_db <= 0:
            raise ValueError("sidelobe_db must be positive")
        if self.kind is BeamKind.SWITCHED:
            c = self.beam_centers_deg
            if not c:
                raise ValueError("switched-beam strategy needs beam_centers_deg")
            if any(b <= a for a, b in zip(c, c[1:])):
                raise ValueError("beam centers must be strictly increasing")
            if any(abs(a + b) > 1e-9 for a, b in zip(c, reversed(c))):
                raise ValueError("beam centers must be symmetric about 0")


@dataclass(frozen=True)
class BeamPointing:
    """An instantaneous beam direction (absolute boresight) of a strategy."""

    boresight_deg: float
    strategy: AntennaStrategy


def pattern_gain(strategy: AntennaStrategy, off_boresight_deg):
    """Gain in dB at an off-boresight angle; accepts scalars or arrays.

    gain_max - min(12 * (angle / hpbw)^2, attenuation cap); the quadratic
    rolloff puts the -3 dB points exactly at +/- hpbw/2. The cap is the
    front-to-back ratio, further limited by the sidelobe level for array beams.
    """
    off = np.asarray(off_boresight_deg, dtype=float)
    cap = min(strategy.front_to_back_db, strategy.sidelobe_db)
    atten = np.minimum(12.0 * (off / strategy.hpbw_deg) ** 2, cap)
    out = strategy.gain_max_dbi - atten
    return out if out.ndim else float(out)


def select_switched_beam(strategy: AntennaStrategy, user_offset_deg: float) -> int:
    """Index of the beam center nearest the user offset; ties to the lower index."""
    if strategy.kind is not BeamKind.SWITCHED:
        raise ValueError("beam selection only applies to switched-beam strategies")
    deviations = np.abs(np.asarray(strategy.beam_centers_deg) - user_offset_deg)
    return int(np.argmin(deviations))


def effective_gain(pointing: BeamPointing, target_bearing_deg: float) -> float:
    off = wrap_angle(target_bearing_deg - pointing.boresight_deg)
    return float(pattern_gain(pointing.strategy, off))


# Case parameters: peak gains and beamwidths of the five simulated antennas.
SWITCHED_BEAM_CENTERS = (-48.0, -32.0, -16.0, 0.0, 16.0, 32.0, 48.0)

_FIXED_PARAMS = {
    LayoutKind.CLOVERLEAF_3: (15.39, 65.0),
    LayoutKind.SNOWFLAKE_6: (18.20, 32.0),
    LayoutKind.FLOWER_12: (21.15, 16.0),
}


def strategy_for(case: str, layout: LayoutKind, front_to_back_db: float = 25.0) -> AntennaStrategy:
    """Antenna strategy for a simulation case name and layout.

    Switched and adaptive cases run on 3-sector sites (the seven 8 deg beams
    span one 120 deg macro sector; the steered 6 deg beam likewise).
    """
    if case == "fixed":
        gain, hpbw = _FIXED_PARAMS[layout]
        return AntennaStrategy(BeamKind.FIXED, gain, hpbw, front_to_back_db)
    if layout is not LayoutKind.CLOVERLEAF_3:
        raise ValueError(f"case {case!r} requires the 3-sector layout")
    if case == "switched":
        return AntennaStrategy(
            BeamKind.SWITCHED, 23.55, 8.0, front_to_back_db, SWITCHED_BEAM_CENTERS, BEAM_SIDELOBE_DB
        )
    if case == "adaptive":
        return AntennaStrategy(BeamKind.ADAPTIVE, 24.5, 6.0, front_to_back_db, sidelobe_db=BEAM_SIDELOBE_DB)
    raise ValueError(f"unknown antenna case {case!r}")


def export_pattern_csv(strategy: AntennaStrategy, path, step_deg: float = 0.5) -> None:
    """(angle_deg, gain_db) over [-180, 180] for pattern plots."""
    angles = np.arange(-180.0, 180.0 + step_deg / 2, step_deg)
    gains = pattern_gain(strategy, angles)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["angle_deg", "gain_db"])
        for a, g in zip(angles, gains):
            writer.writerow([f"{a:.12g}", f"{g:.12g}"])
