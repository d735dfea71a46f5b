"""Downlink system-level simulator for sectorized macro cells and smart antennas."""

__version__ = "0.1.0"

from .geometry import LayoutKind, NetworkGrid, Site, Sector, generate_grid
from .antenna import AntennaStrategy, BeamKind, BeamPointing, pattern_gain
from .engine import SimulationConfig, SampleStore, run_campaign

__all__ = [
    "AntennaStrategy",
    "BeamKind",
    "BeamPointing",
    "LayoutKind",
    "NetworkGrid",
    "SampleStore",
    "Sector",
    "SimulationConfig",
    "Site",
    "generate_grid",
    "pattern_gain",
    "run_campaign",
]
