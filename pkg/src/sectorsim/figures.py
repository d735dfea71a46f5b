"""Matplotlib renderings of the standard result figures, saved next to the CSVs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _ecdf(samples):
    x = np.sort(np.asarray(samples, dtype=float))
    return x, np.arange(1, x.size + 1) / x.size


def plot_cdfs(case_samples: dict, xlabel: str, title: str, path) -> None:
    fig, ax = plt.subplots(figsize=(7, 5))
    for case, samples in case_samples.items():
        x, cdf = _ecdf(samples)
        ax.plot(x, cdf, label=case)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("CDF")
    ax.set_title(title)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_isd_sweep(results: list[dict], metric: str, ylabel: str, title: str, path) -> None:
    """`results` rows need keys: case, isd_m and the chosen metric (bps)."""
    fig, ax = plt.subplots(figsize=(7, 5))
    cases = sorted({r["case"] for r in results})
    for case in cases:
        rows = sorted((r for r in results if r["case"] == case), key=lambda r: r["isd_m"])
        ax.plot(
            [r["isd_m"] for r in rows],
            [r[metric] / 1e6 for r in rows],
            marker="o",
            label=case,
        )
    ax.set_xlabel("Intersite distance (m)")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_pattern(angles_deg, gains_db, title: str, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 5), subplot_kw={"projection": "polar"})
    ax.plot(np.radians(angles_deg), gains_db)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_grid(site_xy, tiers, title: str, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    colors = {0: "tab:red", 1: "tab:blue", 2: "tab:gray"}
    for (x, y), tier in zip(site_xy, tiers):
        ax.plot(x, y, "^", color=colors[tier], markersize=9)
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_convergence(iterations, mse_db, oracle_mse_db: float, title: str, path) -> None:
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(iterations, mse_db, label="LMS (windowed)")
    ax.axhline(oracle_mse_db, color="tab:red", linestyle="--", label="matrix-inversion oracle")
    ax.set_xlabel("Iteration")
    ax.set_ylabel("MSE (dB)")
    ax.set_title(title)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
