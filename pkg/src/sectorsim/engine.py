"""Monte Carlo campaign driver: user drops, scheduling, per-TTI link evaluation.

Random-stream discipline: every (iteration, stream) pair derives its own
generator from the master seed, so results are bit-identical regardless of
worker count or execution order. Streams 0..18 belong to the sites (shadowing
and interfering-beam directions), stream 19 to the user drops.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import antenna, link, propagation
from .antenna import AntennaStrategy, BeamKind
from .geometry import LayoutKind, NetworkGrid, generate_grid, wrap_angle
from .link import LinkBudget, McsEntry, OrthogonalityProfile
from .propagation import NoiseConfig, PropagationConfig, dbm_to_mw

NUM_SITES = 19
DROP_STREAM = NUM_SITES


@dataclass(frozen=True)
class SimulationConfig:
    layout: LayoutKind = LayoutKind.CLOVERLEAF_3
    case: str = "fixed"  # fixed | switched | adaptive
    isd_m: float = 1000.0
    azimuth_offset_deg: float | None = None
    iterations: int = 5000
    master_seed: int = 1
    front_to_back_db: float = 25.0
    alpha_at_site: float = 0.97
    alpha_at_edge: float = 0.70
    propagation: PropagationConfig = field(default_factory=PropagationConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    link_budget: LinkBudget = field(default_factory=LinkBudget)
    mcs_table: tuple[McsEntry, ...] = field(default_factory=link.default_mcs_table)

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if self.case not in ("fixed", "switched", "adaptive"):
            raise ValueError(f"unknown antenna case {self.case!r}")
        if self.case != "fixed" and self.layout is not LayoutKind.CLOVERLEAF_3:
            raise ValueError(f"case {self.case!r} requires the 3-sector layout")
        link.validate_mcs_table(self.mcs_table)

    @property
    def users_per_cell(self) -> int:
        return self.link_budget.users_per_tti


# The five canonical comparison cases.
CASE_DEFS = {
    "3-sector": ("fixed", LayoutKind.CLOVERLEAF_3),
    "6-sector": ("fixed", LayoutKind.SNOWFLAKE_6),
    "12-sector": ("fixed", LayoutKind.FLOWER_12),
    "switched": ("switched", LayoutKind.CLOVERLEAF_3),
    "adaptive": ("adaptive", LayoutKind.CLOVERLEAF_3),
}


def split_resources(budget: LinkBudget) -> tuple[int, float]:
    """Equal-share scheduling: (codes per user, per-user HS-PDSCH power in dBm)."""
    if budget.total_codes % budget.users_per_tti != 0:
        raise ValueError(
            f"total_codes {budget.total_codes} not divisible by users_per_tti {budget.users_per_tti}"
        )
    codes = budget.total_codes // budget.users_per_tti
    power = budget.hs_pdsch_power_dbm - 10.0 * math.log10(budget.users_per_tti)
    return codes, power


def drop_users(grid: NetworkGrid, sector, count: int, rng: np.random.Generator):
    """Uniform-by-area drops inside a sector wedge.

    Returns (bearing_deg, distance_m) arrays; positions follow from the
    central-site origin. Radial inverse-CDF sampling r = R*sqrt(u) is exact
    for the circular wedge.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    width = 360.0 / grid.layout.sectors_per_site
    r = grid.cell_radius_m * np.sqrt(rng.random(count))
    bearing = (sector.azimuth_deg + rng.uniform(-width / 2.0, width / 2.0, count)) % 360.0
    return bearing, r


class Scenario:
    """Precomputed immutable arrays for one simulation configuration."""

    def __init__(self, config: SimulationConfig):
        self.config = config
        self.grid = generate_grid(config.layout, config.isd_m, config.azimuth_offset_deg)
        self.strategy: AntennaStrategy = antenna.strategy_for(
            config.case, config.layout, config.front_to_back_db
        )
        self.site_xy = np.array([[s.x_m, s.y_m] for s in self.grid.sites])
        self.sector_site = np.array([s.site_id for s in self.grid.sectors])
        self.sector_az = np.array([s.azimuth_deg for s in self.grid.sectors])
        central = self.sector_site == 0
        self.central_sector_ids = np.nonzero(central)[0]
        self.n_central = len(self.central_sector_ids)
        self.wedge_width = 360.0 / config.layout.sectors_per_site
        self.users = config.users_per_cell
        self.codes_per_user, self.user_power_dbm = split_resources(config.link_budget)
        self.total_tx_dbm = config.link_budget.total_tx_power_dbm
        self.noise_mw = dbm_to_mw(propagation.thermal_noise_dbm(config.noise))
        self.alpha_profile = OrthogonalityProfile(
            config.alpha_at_site, config.alpha_at_edge, self.grid.cell_radius_m
        )
        self.mcs_thresholds = np.array([e.sinr_threshold_db for e in config.mcs_table])
        self.mcs_rates = np.array([e.per_code_rate_bps for e in config.mcs_table])

    def _rng(self, iteration: int, stream: int) -> np.random.Generator:
        seq = np.random.SeedSequence((self.config.master_seed, iteration, stream))
        return np.random.Generator(np.random.PCG64(seq))

    def _serving_gain_db(self, user_offset: np.ndarray) -> np.ndarray:
        """Beam gain toward each served user, per antenna case."""
        strat = self.strategy
        if strat.kind is BeamKind.FIXED:
            return antenna.pattern_gain(strat, user_offset)
        if strat.kind is BeamKind.SWITCHED:
            centers = np.asarray(strat.beam_centers_deg)
            best = np.argmin(np.abs(user_offset[..., None] - centers), axis=-1)
            return antenna.pattern_gain(strat, user_offset - centers[best])
        return np.full_like(user_offset, strat.gain_max_dbi)

    def _interferer_gain_linear(
        self, bearings: np.ndarray, sub_beam_offsets: np.ndarray | None
    ) -> np.ndarray:
        """Linear beam gain of every sector toward every user, shape (S, U).

        Fixed cases radiate the single sector pattern. Smart cases split the
        sector power over sub-beams pointed at proxy user directions; the
        returned value is the power-weighted mean gain of those beams.
        """
        strat = self.strategy
        off = wrap_angle(bearings - self.sector_az[:, None])
        if strat.kind is BeamKind.FIXED:
            return propagation.db_to_linear(antenna.pattern_gain(strat, off))
        # (S, B, U): off-boresight of each sub-beam toward each user
        delta = wrap_angle(off[:, None, :] - sub_beam_offsets[:, :, None])
        return propagation.db_to_linear(antenna.pattern_gain(strat, delta)).mean(axis=1)

    def _own_beam_offsets(self, user_off: np.ndarray) -> np.ndarray:
        """Boresight offsets (relative to the sector azimuth) of the serving
        sector's per-user beams; one beam per scheduled user."""
        strat = self.strategy
        if strat.kind is BeamKind.FIXED:
            return np.zeros_like(user_off)
        if strat.kind is BeamKind.SWITCHED:
            centers = np.asarray(strat.beam_centers_deg)
            return centers[np.argmin(np.abs(user_off[..., None] - centers), axis=-1)]
        return user_off

    def _sub_beam_offsets(self, site_rngs) -> np.ndarray | None:
        """Proxy pointing directions for interfering smart-antenna sectors."""
        strat = self.strategy
        if strat.kind is BeamKind.FIXED:
            return None
        n = self.config.layout.sectors_per_site
        half = self.wedge_width / 2.0
        offsets = np.empty((len(self.grid.sectors), self.users))
        for s in range(NUM_SITES):
            draw = site_rngs[s].uniform(-half, half, (n, self.users))
            if strat.kind is BeamKind.SWITCHED:
                centers = np.asarray(strat.beam_centers_deg)
                draw = centers[np.argmin(np.abs(draw[..., None] - centers), axis=-1)]
            offsets[self.sector_site == s] = draw
        return offsets

    def evaluate_tti(self, iteration: int):
        """One Monte Carlo snapshot of every central-site sector.

        Returns (sinr_db, throughput_bps) arrays of shape (n_central, users).
        """
        cfg = self.config
        n_c, users = self.n_central, self.users
        drop_rng = self._rng(iteration, DROP_STREAM)
        site_rngs = [self._rng(iteration, s) for s in range(NUM_SITES)]

        # user drops, one wedge of 5 users per central sector
        central_az = self.sector_az[self.central_sector_ids]
        radius = self.grid.cell_radius_m * np.sqrt(drop_rng.random((n_c, users)))
        user_off = drop_rng.uniform(-self.wedge_width / 2.0, self.wedge_width / 2.0, (n_c, users))
        phi = central_az[:, None] + user_off  # absolute bearing from central site
        pos = radius[..., None] * np.stack(
            [np.cos(np.radians(phi)), np.sin(np.radians(phi))], axis=-1
        )
        pos_flat = pos.reshape(-1, 2)
        n_users = n_c * users

        # per-site geometry and shadowing (one value per user-site pair)
        diff = pos_flat[None, :, :] - self.site_xy[:, None, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])  # (19, U)
        bear = np.degrees(np.arctan2(diff[..., 1], diff[..., 0]))
        shadow = np.stack(
            [propagation.shadowing_sample(site_rngs[s], cfg.propagation, n_users) for s in range(NUM_SITES)]
        )
        loss = propagation.path_loss(cfg.propagation, dist)
        sub_beams = self._sub_beam_offsets(site_rngs)

        # received total power of every sector at every user, linear mW
        gain_lin = self._interferer_gain_linear(bear[self.sector_site], sub_beams)
        rx_mw = dbm_to_mw(self.total_tx_dbm - loss[self.sector_site] + shadow[self.sector_site]) * gain_lin

        # serving link
        serve_gain = self._serving_gain_db(user_off.reshape(-1))
        loss_serving = loss[0].reshape(-1) - serve_gain - shadow[0].reshape(-1)
        s_dbm = self.user_power_dbm - loss_serving
        s_mw = dbm_to_mw(s_dbm)

        serving_sector = np.repeat(self.central_sector_ids, users)
        user_idx = np.arange(n_users)
        i_other = cfg.link_budget.loading * cfg.link_budget.activity_factor * (
            rx_mw.sum(axis=0) - rx_mw[serving_sector, user_idx]
        )
        # Own-sector total received power, composed per scheduled beam. Each
        # beam carries an equal share of the sector power; for the fixed case
        # all beams coincide with the sector pattern, which reduces to the
        # whole sector power arriving through the serving gain.
        own_bore = self._own_beam_offsets(user_off)  # (n_c, users)
        delta = wrap_angle(user_off[:, None, :] - own_bore[:, :, None])  # (n_c, beam, user)
        g_own = propagation.db_to_linear(antenna.pattern_gain(self.strategy, delta))
        per_beam_dbm = self.total_tx_dbm - 10.0 * math.log10(users)
        beam_base_mw = dbm_to_mw(per_beam_dbm - loss[0] + shadow[0]).reshape(n_c, users)
        rx_own_mw = (g_own * beam_base_mw[:, None, :]).sum(axis=1).reshape(-1)

        alpha = link.orthogonality(self.alpha_profile, radius.reshape(-1))
        i_own = link.own_cell_interference_mw(rx_own_mw, s_mw, alpha)

        sinr_db = 10.0 * np.log10(s_mw / (i_other + i_own + self.noise_mw))
        mcs_idx = np.searchsorted(self.mcs_thresholds, sinr_db, side="right") - 1
        tput = np.where(
            mcs_idx >= 0,
            self.mcs_rates[np.maximum(mcs_idx, 0)] * self.codes_per_user * cfg.link_budget.carriers,
            0.0,
        )
        return sinr_db.reshape(n_c, users), tput.reshape(n_c, users)


@dataclass
class SampleStore:
    """Raw per-TTI samples collected from the central-site sectors."""

    config: SimulationConfig
    sector_ids: np.ndarray  # (n_central,)
    sinr_db: np.ndarray  # (iterations, n_central, users)
    throughput_bps: np.ndarray  # (iterations, n_central, users)

    @property
    def cell_throughput_bps(self) -> np.ndarray:
        return self.throughput_bps.sum(axis=2)

    def user_sinr_samples(self) -> np.ndarray:
        return self.sinr_db.reshape(-1)

    def user_throughput_samples(self) -> np.ndarray:
        return self.throughput_bps.reshape(-1)

    def cell_sinr_samples(self) -> np.ndarray:
        """Per-TTI cell SINR: linear average of the served users' SINR."""
        lin = 10.0 ** (self.sinr_db / 10.0)
        return 10.0 * np.log10(lin.mean(axis=2)).reshape(-1)

    def cell_throughput_samples(self) -> np.ndarray:
        return self.cell_throughput_bps.reshape(-1)

    def export_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["iteration", "sector_id", "user_index", "sinr_db", "throughput_bps", "cell_throughput_bps"]
            )
            cell = self.cell_throughput_bps
            for it in range(self.sinr_db.shape[0]):
                for c, sec in enumerate(self.sector_ids):
                    for u in range(self.sinr_db.shape[2]):
                        writer.writerow(
                            [
                                it,
                                int(sec),
                                u,
                                f"{self.sinr_db[it, c, u]:.12g}",
                                f"{self.throughput_bps[it, c, u]:.12g}",
                                f"{cell[it, c]:.12g}",
                            ]
                        )


def _run_chunk(config: SimulationConfig, start: int, stop: int):
    scenario = Scenario(config)
    sinr = np.empty((stop - start, scenario.n_central, scenario.users))
    tput = np.empty_like(sinr)
    for i, it in enumerate(range(start, stop)):
        sinr[i], tput[i] = scenario.evaluate_tti(it)
    return sinr, tput


def run_campaign(config: SimulationConfig, workers: int = 1) -> SampleStore:
    """Run the full campaign; output depends only on the configuration."""
    scenario = Scenario(config)
    iters = config.iterations
    if workers <= 1:
        sinr, tput = _run_chunk(config, 0, iters)
    else:
        bounds = np.linspace(0, iters, workers + 1, dtype=int)
        spans = [(int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if b > a]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [config] * len(spans), *zip(*spans)))
        sinr = np.concatenate([p[0] for p in parts])
        tput = np.concatenate([p[1] for p in parts])
    return SampleStore(config, scenario.central_sector_ids, sinr, tput)
