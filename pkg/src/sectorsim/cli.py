"""Command-line front end: campaign orchestration, sweeps, file outputs."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, beamforming, figures, reporting
from .antenna import export_pattern_csv, pattern_gain, strategy_for
from .config import ConfigError, config_to_mapping, merge, parse_config, read_config_file
from .engine import CASE_DEFS, SimulationConfig, run_campaign
from .geometry import LayoutKind, export_grid_csv, generate_grid

DEFAULT_ISD_SWEEP = (250.0, 1000.0, 2000.0, 3000.0)


def _flag_overrides(args) -> dict:
    over: dict = {}
    if getattr(args, "layout", None):
        over.setdefault("grid", {})["layout"] = args.layout
    if getattr(args, "case", None):
        over.setdefault("antenna", {})["case"] = args.case
    if getattr(args, "isd", None) is not None:
        over.setdefault("grid", {})["isd_m"] = args.isd
    if getattr(args, "iterations", None) is not None:
        over.setdefault("run", {})["iterations"] = args.iterations
    if getattr(args, "seed", None) is not None:
        over.setdefault("run", {})["seed"] = args.seed
    if getattr(args, "workers", None) is not None:
        over.setdefault("run", {})["workers"] = args.workers
    return over


def _resolve(args) -> tuple[SimulationConfig, dict]:
    cfg, values = parse_config(args.config, _flag_overrides(args))
    return cfg, values


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_manifest(out: Path, subcommand: str, values: dict, workers: int) -> None:
    manifest = {
        "tool": "sectorsim",
        "version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "subcommand": subcommand,
        "workers": workers,
        "config": config_to_mapping(values),
    }
    with open(out / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _campaign_for_case(base: SimulationConfig, case_name: str, isd_m: float | None = None, workers: int = 1):
    case, layout = CASE_DEFS[case_name]
    cfg = dataclasses.replace(
        base,
        case=case,
        layout=layout,
        azimuth_offset_deg=None,
        isd_m=base.isd_m if isd_m is None else isd_m,
    )
    return cfg, run_campaign(cfg, workers=workers)


def cmd_simulate(args) -> int:
    cfg, values = _resolve(args)
    workers = values.get("run", {}).get("workers", 1)
    out = _out_dir(args)
    store = run_campaign(cfg, workers=workers)

    store.export_csv(out / "raw_samples.csv")
    metrics = {
        "user_sinr_db": store.user_sinr_samples(),
        "cell_sinr_db": store.cell_sinr_samples(),
        "user_throughput_bps": store.user_throughput_samples(),
        "cell_throughput_bps": store.cell_throughput_samples(),
    }
    headers = ["metric", "p10", "p50", "p90", "mean", "std", "n"]
    rows = []
    for name, samples in metrics.items():
        s = reporting.summarize(samples)
        rows.append([name] + [f"{v:.6g}" for v in (s.p10, s.p50, s.p90, s.mean, s.std)] + [s.n])
        reporting.export_cdf(samples, out / f"cdf_{name}.csv")
    rows.append(
        ["probability_no_data", "", "", "", f"{reporting.probability_no_data(metrics['user_throughput_bps']):.6g}", "", metrics["user_throughput_bps"].size]
    )
    reporting.write_table(headers, rows, out / "summary")

    label = f"{cfg.layout.sectors_per_site}-sector {cfg.case}"
    figures.plot_cdfs({label: metrics["user_sinr_db"]}, "User SINR (dB)", "User SINR CDF", out / "fig_cdf_user_sinr.png")
    figures.plot_cdfs(
        {label: metrics["cell_throughput_bps"] / 1e6},
        "Cell throughput (Mbps)",
        "Cell throughput CDF",
        out / "fig_cdf_cell_throughput.png",
    )
    _write_manifest(out, "simulate", values, workers)
    return 0


def cmd_compare_cases(args) -> int:
    base, values = _resolve(args)
    workers = values.get("run", {}).get("workers", 1)
    out = _out_dir(args)

    user_sinr, cell_sinr, cell_tput = {}, {}, {}
    user_tput, no_data = {}, {}
    for case_name in CASE_DEFS:
        _, store = _campaign_for_case(base, case_name, workers=workers)
        user_sinr[case_name] = store.user_sinr_samples()
        cell_sinr[case_name] = store.cell_sinr_samples()
        user_tput[case_name] = store.user_throughput_samples()
        cell_tput[case_name] = store.cell_throughput_samples()
        no_data[case_name] = reporting.probability_no_data(user_tput[case_name])

    ref = "3-sector"
    h, r = reporting.sinr_stats_table({c: reporting.summarize(v) for c, v in user_sinr.items()}, ref, "user SINR")
    reporting.write_table(h, r, out / "table_user_sinr")
    h, r = reporting.sinr_stats_table({c: reporting.summarize(v) for c, v in cell_sinr.items()}, ref, "cell SINR")
    reporting.write_table(h, r, out / "table_cell_sinr")
    h, r = reporting.throughput_stats_table({c: reporting.summarize(v) for c, v in cell_tput.items()}, ref)
    reporting.write_table(h, r, out / "table_cell_throughput")
    reporting.write_table(
        ["Case", "Probability of no data transfer"],
        [[c, f"{p:.4f}"] for c, p in no_data.items()],
        out / "table_no_data",
    )

    for metric, per_case in [
        ("user_sinr", user_sinr),
        ("cell_sinr", cell_sinr),
        ("user_throughput", user_tput),
        ("cell_throughput", cell_tput),
    ]:
        for case_name, samples in per_case.items():
            reporting.export_cdf(samples, out / f"cdf_{metric}_{case_name}.csv")
    figures.plot_cdfs(user_sinr, "User SINR (dB)", "User SINR CDF", out / "fig_cdf_user_sinr.png")
    figures.plot_cdfs(cell_sinr, "Cell SINR (dB)", "Cell SINR CDF", out / "fig_cdf_cell_sinr.png")
    figures.plot_cdfs(
        {c: v / 1e6 for c, v in user_tput.items()},
        "User throughput (Mbps)",
        "User throughput CDF",
        out / "fig_cdf_user_throughput.png",
    )
    figures.plot_cdfs(
        {c: v / 1e6 for c, v in cell_tput.items()},
        "Cell throughput (Mbps)",
        "Cell throughput CDF",
        out / "fig_cdf_cell_throughput.png",
    )
    _write_manifest(out, "compare-cases", values, workers)
    return 0


def cmd_sweep_isd(args) -> int:
    base, values = _resolve(args)
    workers = values.get("run", {}).get("workers", 1)
    out = _out_dir(args)
    cases = [args.sweep_case] if args.sweep_case else list(CASE_DEFS)
    isds = args.isds or list(DEFAULT_ISD_SWEEP)

    results = []
    for case_name in cases:
        for isd in isds:
            cfg, store = _campaign_for_case(base, case_name, isd_m=isd, workers=workers)
            mean_cell = float(store.cell_throughput_samples().mean())
            results.append(
                {
                    "case": case_name,
                    "isd_m": isd,
                    "sectors_per_site": cfg.layout.sectors_per_site,
                    "mean_cell_bps": mean_cell,
                    "mean_site_bps": reporting.site_throughput(mean_cell, cfg.layout.sectors_per_site),
                }
            )

    with open(out / "isd_sweep.csv", "w", newline="") as fh:
        fh.write("case,isd_m,sectors_per_site,mean_cell_tput_bps,mean_site_tput_bps\n")
        for r in results:
            fh.write(
                f"{r['case']},{r['isd_m']:g},{r['sectors_per_site']},"
                f"{r['mean_cell_bps']:.12g},{r['mean_site_bps']:.12g}\n"
            )
    ref_case, ref_isd = "3-sector", 1000.0
    if any(r["case"] == ref_case and r["isd_m"] == ref_isd for r in results):
        h, rows = reporting.isd_sweep_table(results, ref_case, ref_isd)
        reporting.write_table(h, rows, out / "table_isd_sweep")
    figures.plot_isd_sweep(
        results, "mean_cell_bps", "Mean cell throughput (Mbps)", "Mean cell throughput vs ISD", out / "fig_cell_vs_isd.png"
    )
    figures.plot_isd_sweep(
        results, "mean_site_bps", "Mean site throughput (Mbps)", "Mean site throughput vs ISD", out / "fig_site_vs_isd.png"
    )
    _write_manifest(out, "sweep-isd", values, workers)
    return 0


def cmd_beamform_demo(args) -> int:
    out = _out_dir(args)
    result = beamforming.convergence_demo(
        steps=args.steps, step_size=args.step_size, seed=args.seed if args.seed is not None else 1
    )
    beamforming.export_convergence_csv(result["sq_err"], out / "convergence.csv", window=args.window)
    windowed = beamforming.windowed_mse(result["sq_err"], args.window)
    figures.plot_convergence(
        (np.arange(len(windowed)) + 1) * args.window,
        10.0 * np.log10(windowed),
        result["wiener_mse_db"],
        "Trained beamformer convergence",
        out / "fig_convergence.png",
    )
    _write_manifest(out, "beamform-demo", {}, 1)
    return 0


def cmd_dump_patterns(args) -> int:
    out = _out_dir(args)
    for case_name, (case, layout) in CASE_DEFS.items():
        strategy = strategy_for(case, layout)
        export_pattern_csv(strategy, out / f"pattern_{case_name}.csv")
        angles = np.arange(-180.0, 180.5, 0.5)
        figures.plot_pattern(
            angles, pattern_gain(strategy, angles), f"{case_name} radiation pattern", out / f"fig_pattern_{case_name}.png"
        )
    _write_manifest(out, "dump-patterns", {}, 1)
    return 0


def cmd_dump_grid(args) -> int:
    cfg, values = _resolve(args)
    out = _out_dir(args)
    grid = generate_grid(cfg.layout, cfg.isd_m, cfg.azimuth_offset_deg)
    export_grid_csv(grid, out / "grid.csv")
    figures.plot_grid(
        [(s.x_m, s.y_m) for s in grid.sites],
        [s.tier for s in grid.sites],
        f"{grid.layout.sectors_per_site}-sector grid, ISD {grid.isd_m:g} m",
        out / "fig_grid.png",
    )
    _write_manifest(out, "dump-grid", values, 1)
    return 0


def _add_common(parser: argparse.ArgumentParser, with_case: bool = True) -> None:
    parser.add_argument("--config", help="sectioned key-value config file (or a manifest.json)")
    parser.add_argument("--layout", choices=["3sector", "6sector", "12sector"])
    if with_case:
        parser.add_argument("--case", choices=["fixed", "switched", "adaptive"])
    parser.add_argument("--isd", type=float, help="intersite distance in meters")
    parser.add_argument("--iterations", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out", default="results", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sectorsim", description=__doc__)
    parser.add_argument("--version", action="version", version=f"sectorsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one case at one ISD")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare-cases", help="all five cases at one ISD")
    _add_common(p, with_case=False)
    p.set_defaults(func=cmd_compare_cases)

    p = sub.add_parser("sweep-isd", help="mean throughput vs intersite distance")
    _add_common(p, with_case=False)
    p.add_argument("--case", dest="sweep_case", choices=list(CASE_DEFS), help="restrict to one comparison case")
    p.add_argument("--isds", type=float, nargs="+", help="ISD list in meters")
    p.set_defaults(func=cmd_sweep_isd)

    p = sub.add_parser("beamform-demo", help="adaptive beamformer convergence demo")
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--step-size", type=float, default=0.00022)
    p.add_argument("--window", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_beamform_demo)

    p = sub.add_parser("dump-patterns", help="antenna pattern CSVs and figures")
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_dump_patterns)

    p = sub.add_parser("dump-grid", help="site/sector grid CSV and figure")
    _add_common(p, with_case=False)
    p.set_defaults(func=cmd_dump_grid)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"sectorsim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
