"""Statistical post-processing: summaries, CDFs, relative gains, result tables."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StatsSummary:
    p10: float
    p50: float
    p90: float
    mean: float
    std: float
    n: int


def summarize(samples) -> StatsSummary:
    """Mean, population std and 10/50/90 percentiles (linear interpolation)."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("cannot summarize an empty sample set")
    p10, p50, p90 = np.percentile(x, [10.0, 50.0, 90.0])
    return StatsSummary(float(p10), float(p50), float(p90), float(x.mean()), float(x.std()), x.size)


def cell_average_sinr(per_user_sinr_db) -> float:
    """Cell SINR for one TTI: linear mean of the users' SINR, back to dB."""
    v = np.asarray(per_user_sinr_db, dtype=float)
    return float(10.0 * np.log10(np.mean(10.0 ** (v / 10.0))))


def relative_gain_db(case_mean_db: float, reference_mean_db: float) -> float:
    return case_mean_db - reference_mean_db


def relative_gain_pct(case_mean: float, reference_mean: float) -> float:
    if reference_mean == 0:
        raise ValueError("reference mean must be non-zero")
    return 100.0 * (case_mean - reference_mean) / reference_mean


def probability_no_data(user_throughputs) -> float:
    x = np.asarray(user_throughputs, dtype=float)
    if x.size == 0:
        raise ValueError("need at least one sample")
    return float(np.count_nonzero(x == 0.0) / x.size)


def site_throughput(mean_cell_throughput: float, sectors_per_site: int) -> float:
    if sectors_per_site < 1:
        raise ValueError("sectors_per_site must be at least 1")
    return mean_cell_throughput * sectors_per_site


def export_cdf(samples, path) -> None:
    """(value, empirical_cdf) CSV; duplicates keep the last-occurrence cdf."""
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("need at least one sample")
    cdf = np.arange(1, x.size + 1) / x.size
    # keep the highest cdf per distinct value
    keep = np.r_[x[1:] != x[:-1], True]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value", "empirical_cdf"])
        for v, c in zip(x[keep], cdf[keep]):
            writer.writerow([f"{v:.12g}", f"{c:.12g}"])


# ---------------------------------------------------------------------------
# table rendering

def render_tsv(headers: list[str], rows: list[list]) -> str:
    lines = ["\t".join(headers)]
    for row in rows:
        lines.append("\t".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def render_markdown(headers: list[str], rows: list[list]) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join(" --- " for _ in headers) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def sinr_stats_table(case_summaries: dict[str, StatsSummary], reference: str, metric: str):
    """Per-case SINR statistics with dB gain relative to the reference case."""
    headers = [
        "Case",
        f"10 percentile {metric} (dB)",
        f"50 percentile {metric} (dB)",
        f"90 percentile {metric} (dB)",
        f"Mean {metric} (dB)",
        f"STD {metric} (dB)",
        "Relative SINR gain (dB)",
    ]
    ref_mean = case_summaries[reference].mean
    rows = []
    for case, s in case_summaries.items():
        rows.append(
            [
                case,
                f"{s.p10:.2f}",
                f"{s.p50:.2f}",
                f"{s.p90:.2f}",
                f"{s.mean:.2f}",
                f"{s.std:.2f}",
                f"{relative_gain_db(s.mean, ref_mean):.2f}",
            ]
        )
    return headers, rows


def throughput_stats_table(case_summaries: dict[str, StatsSummary], reference: str):
    """Per-case cell throughput statistics (Mbps) with relative gain in percent."""
    headers = [
        "Case",
        "10 percentile cell throughput (Mbps)",
        "50 percentile cell throughput (Mbps)",
        "90 percentile cell throughput (Mbps)",
        "Mean cell throughput (Mbps)",
        "STD cell throughput (Mbps)",
        "Relative throughput gain (%)",
    ]
    ref_mean = case_summaries[reference].mean
    rows = []
    for case, s in case_summaries.items():
        rows.append(
            [
                case,
                f"{s.p10 / 1e6:.2f}",
                f"{s.p50 / 1e6:.2f}",
                f"{s.p90 / 1e6:.2f}",
                f"{s.mean / 1e6:.2f}",
                f"{s.std / 1e6:.2f}",
                f"{relative_gain_pct(s.mean, ref_mean):.2f}",
            ]
        )
    return headers, rows


def isd_sweep_table(results: list[dict], reference_case: str, reference_isd_m: float):
    """Mean cell/site throughput per (case, isd) with gains vs the reference point.

    `results` rows need keys: case, isd_m, sectors_per_site, mean_cell_bps.
    """
    ref = next(
        r for r in results if r["case"] == reference_case and r["isd_m"] == reference_isd_m
    )
    headers = [
        "ISD (m)",
        "Case",
        "Mean cell throughput (Mbps)",
        "Relative cell throughput gain (%)",
        "Mean site throughput (Mbps)",
        "Relative site throughput gain (%)",
    ]
    ref_cell = ref["mean_cell_bps"]
    ref_site = site_throughput(ref["mean_cell_bps"], ref["sectors_per_site"])
    rows = []
    for r in results:
        cell = r["mean_cell_bps"]
        site = site_throughput(cell, r["sectors_per_site"])
        rows.append(
            [
                f"{r['isd_m']:g}",
                r["case"],
                f"{cell / 1e6:.2f}",
                f"{relative_gain_pct(cell, ref_cell):.2f}",
                f"{site / 1e6:.2f}",
                f"{relative_gain_pct(site, ref_site):.2f}",
            ]
        )
    return headers, rows


def write_table(headers, rows, stem) -> None:
    """Write a table as both <stem>.tsv and <stem>.md."""
    with open(f"{stem}.tsv", "w") as fh:
        fh.write(render_tsv(headers, rows))
    with open(f"{stem}.md", "w") as fh:
        fh.write(render_markdown(headers, rows))
