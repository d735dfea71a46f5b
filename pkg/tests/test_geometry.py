"""Tests for the network tessellation and cell geometry."""

import math

import numpy as np
import pytest

from sectorsim.geometry import (
    DEFAULT_AZIMUTH_OFFSET,
    LayoutKind,
    Wedge,
    angle_and_distance,
    generate_grid,
    sector_wedge,
    wrap_angle,
)


def test_wrap_angle_range():
    angles = np.array([-720.0, -180.0, -90.0, 0.0, 90.0, 179.9, 180.0, 359.0, 720.0])
    wrapped = wrap_angle(angles)
    assert np.all(wrapped >= -180.0)
    assert np.all(wrapped < 180.0)
    assert wrap_angle(180.0) == -180.0
    assert wrap_angle(-180.0) == -180.0
    assert wrap_angle(270.0) == -90.0
    assert wrap_angle(45.0) == 45.0


def test_angle_and_distance():
    bearing, dist = angle_and_distance((0.0, 0.0), (1.0, 1.0))
    assert bearing == pytest.approx(45.0)
    assert dist == pytest.approx(math.sqrt(2.0))
    bearing, _ = angle_and_distance((2.0, 2.0), (2.0, 1.0))
    assert bearing == pytest.approx(270.0)
    with pytest.raises(ValueError):
        angle_and_distance((1.0, 1.0), (1.0, 1.0))


def test_grid_site_counts_and_tiers():
    grid = generate_grid(LayoutKind.CLOVERLEAF_3, 1000.0)
    assert len(grid.sites) == 19
    tiers = [s.tier for s in grid.sites]
    assert tiers.count(0) == 1
    assert tiers.count(1) == 6
    assert tiers.count(2) == 12
    assert grid.sites[0].x_m == 0.0 and grid.sites[0].y_m == 0.0


def test_grid_site_distances():
    isd = 1000.0
    grid = generate_grid(LayoutKind.CLOVERLEAF_3, isd)
    dists = sorted(math.hypot(s.x_m, s.y_m) for s in grid.sites[1:])
    assert dists[:6] == pytest.approx([isd] * 6)
    assert dists[6:12] == pytest.approx([isd * math.sqrt(3.0)] * 6)
    assert dists[12:] == pytest.approx([2.0 * isd] * 6)


@pytest.mark.parametrize("layout,count", [
    (LayoutKind.CLOVERLEAF_3, 3),
    (LayoutKind.SNOWFLAKE_6, 6),
    (LayoutKind.FLOWER_12, 12),
])
def test_sector_counts_per_layout(layout, count):
    grid = generate_grid(layout, 500.0)
    assert layout.sectors_per_site == count
    assert len(grid.sectors) == 19 * count
    for site in grid.sites:
        azs = sorted(s.azimuth_deg for s in grid.sectors_of(site.id))
        assert len(azs) == count
        # equal angular spacing
        gaps = [b - a for a, b in zip(azs, azs[1:])]
        assert gaps == pytest.approx([360.0 / count] * (count - 1))


def test_default_azimuth_offsets():
    assert DEFAULT_AZIMUTH_OFFSET[LayoutKind.CLOVERLEAF_3] == 30.0
    grid = generate_grid(LayoutKind.CLOVERLEAF_3, 1000.0)
    azs = sorted(s.azimuth_deg for s in grid.sectors_of(0))
    assert azs == pytest.approx([30.0, 150.0, 270.0])


def test_cell_radius():
    grid = generate_grid(LayoutKind.SNOWFLAKE_6, 900.0)
    assert grid.cell_radius_m == pytest.approx(900.0 / math.sqrt(3.0))


def test_wedge_membership_and_tiebreak():
    w = Wedge(azimuth_deg=30.0, width_deg=120.0, radius_m=577.0)
    assert w.contains_bearing(30.0)
    assert w.contains_bearing(89.0)
    # shared boundary at azimuth + width/2 belongs to this wedge ...
    assert w.contains_bearing(90.0)
    # ... the one at azimuth - width/2 does not
    assert not w.contains_bearing(-30.0)
    assert not w.contains_bearing(150.0)


def test_sector_wedges_partition_the_circle():
    grid = generate_grid(LayoutKind.FLOWER_12, 1000.0)
    wedges = [sector_wedge(grid, s) for s in grid.sectors_of(0)]
    rng = np.random.default_rng(0)
    for bearing in rng.uniform(0.0, 360.0, 500):
        owners = [w for w in wedges if w.contains_bearing(bearing)]
        assert len(owners) == 1


def test_generate_grid_validation():
    with pytest.raises(ValueError):
        generate_grid(LayoutKind.CLOVERLEAF_3, -1.0)
    with pytest.raises(ValueError):
        generate_grid(LayoutKind.CLOVERLEAF_3, 1000.0, azimuth_offset_deg=400.0)


def test_sector_wedge_rejects_foreign_sector():
    grid_a = generate_grid(LayoutKind.CLOVERLEAF_3, 1000.0)
    grid_b = generate_grid(LayoutKind.SNOWFLAKE_6, 1000.0)
    with pytest.raises(ValueError):
        sector_wedge(grid_a, grid_b.sectors[0])


def test_export_grid_csv(tmp_path):
    grid = generate_grid(LayoutKind.CLOVERLEAF_3, 1000.0)
    path = tmp_path / "grid.csv"
    from sectorsim.geometry import export_grid_csv

    export_grid_csv(grid, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "site_id,x_m,y_m,tier,sector_id,azimuth_deg"
    assert len(lines) == 1 + len(grid.sectors)
