"""Experiment harness: single runs, case pairs, parameter sweeps, file outputs.

Outputs per run live in <out_dir>/<label>/: one CSV per requested output
time and diagnostic field, plus a JSON manifest.  All CSV numbers are
written with %.17g so reruns are byte-identical.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._version import __version__
from .config import ExperimentConfig, serialize_config
from .diagnostics import (
    CenterField,
    MetricSeries,
    conserved_totals,
    count_peaks,
    l1_distance,
    l2_density_error,
    state_vorticity,
)
from .grid import Grid, build_grid
from .initial_data import build_initial_state
from .poisson import PoissonConvergenceError
from .solver import RunStats, SolverError, TimeController, run as advance

__all__ = [
    "NumericalRunError",
    "SnapshotInfo",
    "RunRecord",
    "write_snapshot_csv",
    "read_snapshot_csv",
    "write_metric_csv",
    "read_metric_csv",
    "run_single",
    "run_pair",
    "run_sweep",
    "run_refinement",
]


class NumericalRunError(RuntimeError):
    """A run failed numerically (blow-up, positivity loss, Poisson stall)."""

    def __init__(self, message: str, record: "RunRecord | None" = None):
        super().__init__(message)
        self.record = record


@dataclass(frozen=True)
class SnapshotInfo:
    field: str
    time: float
    path: str
    rows: int


@dataclass
class RunRecord:
    """Everything the manifest reports about one run."""

    config: ExperimentConfig
    status: str = "ok"
    snapshots: list[SnapshotInfo] = field(default_factory=list)
    steps: int = 0
    wall_seconds: float = 0.0
    min_corner_density: float = math.inf
    totals_initial: tuple[float, float, float] = (0.0, 0.0, 0.0)
    totals_final: tuple[float, float, float] = (0.0, 0.0, 0.0)
    peak_counts: dict = field(default_factory=dict)
    final_field: object = None  # DGField, not serialized

    def manifest_dict(self) -> dict:
        # momenta start near zero for point-symmetric data, so normalize
        # their drift by the total mass instead of dividing by ~0
        mass_scale = abs(self.totals_initial[0]) if self.totals_initial else 1.0
        drift = [
            abs(b - a) / max(abs(a), mass_scale, 1e-300)
            for a, b in zip(self.totals_initial, self.totals_final)
        ]
        return {
            "version": __version__,
            "status": self.status,
            "config": serialize_config(self.config).strip().splitlines(),
            "snapshots": [
                {"field": s.field, "time": s.time, "path": s.path, "rows": s.rows}
                for s in self.snapshots
            ],
            "steps": self.steps,
            "wall_seconds": round(self.wall_seconds, 3),
            "min_corner_density": self.min_corner_density,
            "totals_initial": list(self.totals_initial),
            "totals_final": list(self.totals_final),
            "relative_drift": drift,
            "peak_counts": {f"{t:.12g}": n for t, n in sorted(self.peak_counts.items())},
        }


def _write_manifest(record: RunRecord, directory: Path) -> Path:
    path = directory / "manifest.json"
    with path.open("w") as fh:
        json.dump(record.manifest_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_snapshot_csv(path: str | Path, grid: Grid, values: np.ndarray) -> int:
    """Cell-center snapshot: header x_center,y_center,value; y varies slowest.

    Rows run j-major: for each y all x in order.  Returns the row count.
    """
    values = np.asarray(values)
    if values.shape != (grid.N, grid.N):
        raise ValueError(f"values must have shape {(grid.N, grid.N)}, got {values.shape}")
    X, Y = grid.center_mesh()
    # j-major flattening: transpose so y is the slow axis
    table = np.column_stack([X.T.ravel(), Y.T.ravel(), values.T.ravel()])
    np.savetxt(path, table, fmt="%.17g", delimiter=",", header="x_center,y_center,value", comments="")
    return table.shape[0]


def read_snapshot_csv(path: str | Path) -> tuple[Grid, CenterField]:
    """Invert write_snapshot_csv; the grid is rebuilt from the coordinates."""
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if table.shape[1] != 3:
        raise ValueError(f"snapshot CSV must have 3 columns, got {table.shape[1]}")
    rows = table.shape[0]
    n = math.isqrt(rows)
    if n * n != rows:
        raise ValueError(f"snapshot CSV rows ({rows}) do not form a square mesh")
    xs = table[: n, 0]
    dx = xs[1] - xs[0] if n > 1 else 0.0
    a = 0.5 * dx * n
    grid = build_grid(a, n)
    if not np.allclose(grid.center_x, xs, rtol=0, atol=1e-12 * max(a, 1.0)):
        raise ValueError("snapshot CSV x coordinates are not a uniform center mesh")
    values = table[:, 2].reshape(n, n).T  # undo the j-major flattening
    return grid, CenterField(grid, np.ascontiguousarray(values))


def write_metric_csv(path: str | Path, series: MetricSeries) -> None:
    """Metric series CSV: header time,value; %.17g numbers."""
    with Path(path).open("w") as fh:
        fh.write("time,value\n")
        for t, v in zip(series.times, series.values):
            fh.write(f"{t:.17g},{v:.17g}\n")


def read_metric_csv(path: str | Path, label: str = "") -> MetricSeries:
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return MetricSeries(tuple(table[:, 0]), tuple(table[:, 1]), label=label)


def _fmt_time(t: float) -> str:
    return f"{t:.6g}".replace("-", "m").replace(".", "p")


def run_single(
    config: ExperimentConfig,
    out_root: str | Path | None = None,
    keep_field: bool = True,
    sample_times: tuple[float, ...] = (),
    on_sample=None,
) -> RunRecord:
    """One full experiment: build, advance, snapshot, manifest.

    Snapshots (vorticity and density at cell centers) are written at
    every resolved output time.  on_sample(t, field) additionally fires
    at each of sample_times without writing files (the pair metric uses
    this).  On numerical failure the manifest is still written with
    status "failed: ..." and NumericalRunError is raised with the
    partial record attached.
    """
    root = Path(out_root) if out_root is not None else Path(config.out_dir)
    directory = root / config.label
    directory.mkdir(parents=True, exist_ok=True)
    record = RunRecord(config=config)
    grid = build_grid(config.a, config.N)
    if config.epsilon < 2.0 * grid.dx:
        warnings.warn(
            f"mollification radius epsilon={config.epsilon:g} is under two cells "
            f"(dx={grid.dx:g}); the core is under-resolved",
            stacklevel=2,
        )
    output_times = config.resolved_output_times()
    sample_set = set(sample_times)
    hook_times = sorted(set(output_times) | sample_set)
    t_start = time.perf_counter()
    try:
        state = build_initial_state(
            grid,
            config.vorticity_params(),
            config.fluid_params(),
            rho_floor=config.rho_floor_init,
            poisson_tol=config.poisson_tol,
        )
        record.totals_initial = conserved_totals(state)
        snapshot_set = set(output_times)

        def hook(t: float, fld) -> None:
            if t in snapshot_set:
                omega = state_vorticity(fld, config.rho_floor_limiter)
                for name, values in (("vorticity", omega.values), ("density", fld.cell_averages[0])):
                    fname = f"{config.label}_{name}_t{_fmt_time(t)}.csv"
                    rows = write_snapshot_csv(directory / fname, grid, values)
                    record.snapshots.append(SnapshotInfo(name, t, fname, rows))
                record.peak_counts[t] = count_peaks(
                    omega,
                    window=config.peak_window,
                    tau=config.peak_tau,
                    min_size=config.peak_min_size,
                )
            if on_sample is not None and t in sample_set:
                on_sample(t, fld)

        stats = RunStats()
        tc = TimeController(t_end=config.T, cfl=config.cfl)
        state = advance(
            state,
            tc,
            output_times=hook_times,
            hook=hook,
            rho_floor=config.rho_floor_limiter,
            stats=stats,
        )
        record.steps = stats.steps
        record.min_corner_density = (
            stats.min_corner_density if np.isfinite(stats.min_corner_density) else state.corner_min_density()
        )
        record.totals_final = conserved_totals(state)
        if keep_field:
            record.final_field = state
    except (SolverError, PoissonConvergenceError) as exc:
        record.status = f"failed: {exc}"
        record.wall_seconds = time.perf_counter() - t_start
        _write_manifest(record, directory)
        raise NumericalRunError(str(exc), record) from exc
    record.wall_seconds = time.perf_counter() - t_start
    _write_manifest(record, directory)
    return record


def pair_sample_times(config: ExperimentConfig) -> tuple[float, ...]:
    """Metric sampling cadence: explicit output_times, else 20 uniform samples."""
    if config.output_times is not None:
        return config.output_times
    if config.T == 0.0:
        return (0.0,)
    return tuple(k * config.T / 20.0 for k in range(1, 21))


def run_pair(
    config: ExperimentConfig,
    out_root: str | Path | None = None,
    cases: tuple[int, int] = (0, 2),
) -> tuple[MetricSeries, RunRecord, RunRecord]:
    """Run two mollification cases and track their L1 vorticity distance.

    The distance is sampled at pair_sample_times(config) from the
    in-memory vorticity diagnostic of both runs and saved as
    <label>_gap.csv next to the two run directories.  Snapshots follow
    the usual per-run rules.
    """
    root = Path(out_root) if out_root is not None else Path(config.out_dir)
    times = pair_sample_times(config)
    captured: list[dict] = [{}, {}]
    records = []
    for slot, case in enumerate(cases):
        sub = config.with_updates(case=case, label=f"{config.label}_case{case}")

        def capture(t, fld, slot=slot):
            captured[slot][t] = state_vorticity(fld, config.rho_floor_limiter)

        records.append(
            run_single(sub, out_root=root, keep_field=False, sample_times=times, on_sample=capture)
        )
    gaps = tuple(l1_distance(captured[0][t], captured[1][t]) for t in times)
    series = MetricSeries(times, gaps, label=f"{config.label}_gap")
    write_metric_csv(root / f"{config.label}_gap.csv", series)
    return series, records[0], records[1]


def _sweep_config(config: ExperimentConfig, key: str, value) -> ExperimentConfig:
    if key == "theta0":
        key = "theta0_over_pi"
    if key == "N":
        value = int(value)
    tag = f"{value:g}" if isinstance(value, float) else str(value)
    tag = tag.replace(".", "p").replace("-", "m")
    return config.with_updates(**{key: value, "label": f"{config.label}_{key}{tag}"})


_SWEEP_KEYS = ("alpha", "beta", "theta0", "epsilon", "A", "N")


def _run_sweep_entry(args) -> RunRecord:
    config, out_root = args
    try:
        return run_single(config, out_root=out_root, keep_field=False)
    except NumericalRunError as exc:
        return exc.record


def run_sweep(
    config: ExperimentConfig,
    key: str,
    values,
    out_root: str | Path | None = None,
    workers: int = 1,
) -> list[RunRecord]:
    """One run per value of key; failures are recorded, not raised.

    key "theta0" maps onto theta0_over_pi (values are fractions of pi).
    A summary CSV (value, status, final peak count) lands next to the
    run directories.  workers > 1 distributes runs across processes.
    """
    if key not in _SWEEP_KEYS:
        raise ValueError(f"sweep key must be one of {_SWEEP_KEYS}, got {key!r}")
    root = Path(out_root) if out_root is not None else Path(config.out_dir)
    configs = [_sweep_config(config, key, v) for v in values]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_sweep_entry, [(c, root) for c in configs]))
    else:
        records = [_run_sweep_entry((c, root)) for c in configs]
    summary = root / f"{config.label}_sweep_{key}.csv"
    with summary.open("w") as fh:
        fh.write(f"{key},status,peaks_final\n")
        for value, rec in zip(values, records):
            peaks = rec.peak_counts.get(max(rec.peak_counts), "") if rec.peak_counts else ""
            status = "ok" if rec.status == "ok" else "failed"
            fh.write(f"{value:.17g},{status},{peaks}\n")
    return records


def run_refinement(
    config: ExperimentConfig,
    mesh_sizes,
    out_root: str | Path | None = None,
) -> list[tuple[int, float]]:
    """Mesh ladder: rerun config on each N, compare final density to the
    finest run (the last entry, used as reference only).

    Returns (N, l2 gap) pairs for the non-reference meshes and writes
    them to <label>_refinement.csv.
    """
    sizes = [int(n) for n in mesh_sizes]
    if len(sizes) < 2 or sorted(set(sizes)) != sizes:
        raise ValueError("mesh_sizes must be strictly increasing with a reference last")
    root = Path(out_root) if out_root is not None else Path(config.out_dir)
    records = []
    for n in sizes:
        sub = config.with_updates(N=n, label=f"{config.label}_N{n}")
        records.append(run_single(sub, out_root=root, keep_field=True))
    reference = records[-1].final_field
    out = []
    for n, rec in zip(sizes[:-1], records[:-1]):
        out.append((n, l2_density_error(rec.final_field, reference)))
    path = root / f"{config.label}_refinement.csv"
    with path.open("w") as fh:
        fh.write("N,l2_density_gap\n")
        for n, err in out:
            fh.write(f"{n},{err:.17g}\n")
    return out
