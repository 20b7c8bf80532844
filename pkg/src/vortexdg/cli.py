"""Command line entry: run, pair, sweep, presets, preset.

Exit codes: 0 success, 1 usage/config error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, load_config
from .poisson import PoissonConvergenceError
from .presets import PRESETS, list_presets, preset_config
from .runner import NumericalRunError, run_pair, run_refinement, run_single, run_sweep
from .solver import SolverError

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexdg",
        description="2D isentropic Euler runs with wedge-vortex initial data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None, help="output root (default: config out_dir)")

    p_run = sub.add_parser("run", help="one experiment from a config file")
    p_run.add_argument("config")
    add_common(p_run)

    p_pair = sub.add_parser("pair", help="Case 0 vs Case 2 with the L1 vorticity gap")
    p_pair.add_argument("config")
    add_common(p_pair)

    p_sweep = sub.add_parser("sweep", help="repeat a config over values of one key")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--key", required=True, choices=["alpha", "beta", "theta0", "epsilon", "A", "N"])
    p_sweep.add_argument("--values", required=True, help="comma-separated numbers")
    p_sweep.add_argument("--threads", type=int, default=1, help="parallel runs")
    add_common(p_sweep)

    sub.add_parser("presets", help="list the built-in experiment presets")

    p_preset = sub.add_parser("preset", help="run a built-in preset")
    p_preset.add_argument("name", choices=list(PRESETS))
    p_preset.add_argument("--paper-scale", action="store_true", help="full resolution instead of desk scale")
    p_preset.add_argument("--threads", type=int, default=1)
    add_common(p_preset)
    return parser


def _parse_values(text: str) -> list[float]:
    try:
        values = [float(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse sweep values: {text!r}") from None
    return values


def _dispatch(args) -> int:
    if args.command == "presets":
        for name, description in list_presets():
            print(f"{name:20s} {description}")
        return 0
    if args.command == "run":
        record = run_single(load_config(args.config), out_root=args.out, keep_field=False)
        peaks = ", ".join(f"t={t:g}: {n}" for t, n in sorted(record.peak_counts.items()))
        print(f"run {record.config.label}: {record.steps} steps, peaks [{peaks}]")
        return 0
    if args.command == "pair":
        series, rec0, rec2 = run_pair(load_config(args.config), out_root=args.out)
        for t, v in zip(series.times, series.values):
            print(f"t={t:g}: gap {v:.6e}")
        return 0
    if args.command == "sweep":
        values = _parse_values(args.values)
        records = run_sweep(
            load_config(args.config), args.key, values, out_root=args.out, workers=args.threads
        )
        for value, rec in zip(values, records):
            peaks = rec.peak_counts.get(max(rec.peak_counts), "?") if rec.peak_counts else "?"
            print(f"{args.key}={value:g}: {rec.status}  final peaks: {peaks}")
        return 0
    if args.command == "preset":
        preset, cfg = preset_config(args.name, paper_scale=args.paper_scale)
        if preset.kind == "pair":
            series, *_ = run_pair(cfg, out_root=args.out)
            for t, v in zip(series.times, series.values):
                print(f"t={t:g}: gap {v:.6e}")
        elif preset.kind == "sweep":
            values = preset.full_sweep_values if args.paper_scale and preset.full_sweep_values else preset.sweep_values
            records = run_sweep(cfg, preset.sweep_key, list(values), out_root=args.out, workers=args.threads)
            for value, rec in zip(values, records):
                peaks = rec.peak_counts.get(max(rec.peak_counts), "?") if rec.peak_counts else "?"
                print(f"{preset.sweep_key}={value:g}: {rec.status}  final peaks: {peaks}")
        else:  # refinement ladder
            values = preset.full_sweep_values if args.paper_scale and preset.full_sweep_values else preset.sweep_values
            gaps = run_refinement(cfg, list(values), out_root=args.out)
            for n, err in gaps:
                print(f"N={n}: L2 density gap {err:.6e}")
        return 0
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; remap to the config-error code
        return 0 if exc.code == 0 else 1
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (NumericalRunError, SolverError, PoissonConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
