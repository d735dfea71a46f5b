"""Hexagonal network tessellation: 19-site grids, sector azimuths, cell geometry.

Bearing convention throughout: degrees counter-clockwise from the +x axis,
normalized to [0, 360). Sector azimuths use the same convention.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

SQRT3 = math.sqrt(3.0)


class LayoutKind(Enum):
    """Regular tessellations for 3-, 6- and 12-sector sites."""

    CLOVERLEAF_3 = 3
    SNOWFLAKE_6 = 6
    FLOWER_12 = 12

    @property
    def sectors_per_site(self) -> int:
        return self.value


# Per-layout default orientation of the sector azimuth set. The 30 deg offset
# for the 3-sector layout makes first-tier neighbors face the serving site's
# pattern nulls; the 6/12-sector orientations are plain configuration defaults.
DEFAULT_AZIMUTH_OFFSET = {
    LayoutKind.CLOVERLEAF_3: 30.0,
    LayoutKind.SNOWFLAKE_6: 0.0,
    LayoutKind.FLOWER_12: 0.0,
}


@dataclass(frozen=True)
class Site:
    id: int
    x_m: float
    y_m: float
    tier: int


@dataclass(frozen=True)
class Sector:
    id: int
    site_id: int
    azimuth_deg: float


@dataclass(frozen=True)
class Wedge:
    """Angular interval of one sector plus the nominal cell radius."""

    azimuth_deg: float
    width_deg: float
    radius_m: float

    @property
    def low_deg(self) -> float:
        return self.azimuth_deg - self.width_deg / 2.0

    @property
    def high_deg(self) -> float:
        return self.azimuth_deg + self.width_deg / 2.0

    def contains_bearing(self, bearing_deg: float) -> bool:
        # Boundary ties go to the lower-azimuth wedge: the shared boundary at
        # azimuth + width/2 belongs to this wedge, the one at -width/2 does not.
        off = wrap_angle(bearing_deg - self.azimuth_deg)
        return -self.width_deg / 2.0 < off <= self.width_deg / 2.0


@dataclass(frozen=True)
class NetworkGrid:
    layout: LayoutKind
    isd_m: float
    azimuth_offset_deg: float
    sites: tuple[Site, ...]
    sectors: tuple[Sector, ...]

    @property
    def cell_radius_m(self) -> float:
        """Nominal cell radius: hexagon circumradius for site spacing isd."""
        return self.isd_m / SQRT3

    def sectors_of(self, site_id: int) -> list[Sector]:
        return [s for s in self.sectors if s.site_id == site_id]


def wrap_angle(angle_deg: float):
    """Wrap an angle (or array) to [-180, 180)."""
    return (angle_deg + 180.0) % 360.0 - 180.0


def angle_and_distance(origin: tuple[float, float], target: tuple[float, float]) -> tuple[float, float]:
    """Bearing in [0, 360) and Euclidean distance from origin to target."""
    dx = target[0] - origin[0]
    dy = target[1] - origin[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("bearing undefined for coincident points")
    bearing = math.degrees(math.atan2(dy, dx)) % 360.0
    return bearing, math.hypot(dx, dy)


def _site_positions(isd_m: float) -> list[tuple[float, float, int]]:
    """Center site plus two interferer tiers on a triangular lattice.

    First-tier neighbors sit at bearings 30 + 60k deg, so with the default
    3-sector azimuth set {30, 150, 270} every neighbor faces the central site
    through a pattern null (the cloverleaf property).
    """
    positions = [(0.0, 0.0, 0)]
    for k in range(6):
        a = math.radians(30.0 + 60.0 * k)
        positions.append((isd_m * math.cos(a), isd_m * math.sin(a), 1))
    for k in range(6):
        a = math.radians(60.0 * k)
        r = isd_m * SQRT3
        positions.append((r * math.cos(a), r * math.sin(a), 2))
    for k in range(6):
        a = math.radians(30.0 + 60.0 * k)
        r = 2.0 * isd_m
        positions.append((r * math.cos(a), r * math.sin(a), 2))
    return positions


def generate_grid(layout: LayoutKind, isd_m: float, azimuth_offset_deg: float | None = None) -> NetworkGrid:
    """Build the 19-site grid with identical sector azimuth sets at every site.

    Site 0 is the measured central site; tier 1 holds the six nearest
    interferers at distance isd, tier 2 the twelve at isd*sqrt(3) and 2*isd.
    """
    if isd_m <= 0:
        raise ValueError(f"isd_m must be positive, got {isd_m}")
    if azimuth_offset_deg is None:
        azimuth_offset_deg = DEFAULT_AZIMUTH_OFFSET[layout]
    if not 0.0 <= azimuth_offset_deg < 360.0:
        raise ValueError(f"azimuth_offset_deg must be in [0, 360), got {azimuth_offset_deg}")

    sites = tuple(
        Site(i, x, y, tier) for i, (x, y, tier) in enumerate(_site_positions(isd_m))
    )
    n = layout.sectors_per_site
    step = 360.0 / n
    sectors = []
    for site in sites:
        for k in range(n):
            az = (azimuth_offset_deg + k * step) % 360.0
            sectors.append(Sector(id=len(sectors), site_id=site.id, azimuth_deg=az))
    return NetworkGrid(layout, isd_m, azimuth_offset_deg, sites, tuple(sectors))


def sector_wedge(grid: NetworkGrid, sector: Sector) -> Wedge:
    """Nominal cell region of a sector, used for user drops."""
    if sector not in grid.sectors:
        raise ValueError(f"sector {sector.id} does not belong to this grid")
    width = 360.0 / grid.layout.sectors_per_site
    return Wedge(sector.azimuth_deg, width, grid.cell_radius_m)


def export_grid_csv(grid: NetworkGrid, path) -> None:
    """One row per sector: site_id, x_m, y_m, tier, sector_id, azimuth_deg."""
    site_by_id = {s.id: s for s in grid.sites}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["site_id", "x_m", "y_m", "tier", "sector_id", "azimuth_deg"])
        for sec in grid.sectors:
            site = site_by_id[sec.site_id]
            writer.writerow(
                [site.id, f"{site.x_m:.12g}", f"{site.y_m:.12g}", site.tier, sec.id, f"{sec.azimuth_deg:.12g}"]
            )
