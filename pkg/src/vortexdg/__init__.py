"""2D isentropic Euler solver with wedge-vortex initial data and run harness."""

from ._version import __version__

from .config import (
    ConfigError,
    ExperimentConfig,
    load_config,
    parse_config,
    save_config,
    serialize_config,
)
from .diagnostics import (
    CenterField,
    MetricSeries,
    center_velocity,
    conserved_totals,
    count_peaks,
    l1_distance,
    l2_density_error,
    peak_components,
    state_vorticity,
    vorticity_field,
)
from .grid import Grid, build_grid, polar
from .initial_data import (
    angular_profile,
    assemble_dg_state,
    base_vorticity,
    build_initial_state,
    case_vorticity,
    initial_density,
    node_velocities,
)
from .params import FluidParams, VorticityParams
from .poisson import NodeField, PoissonConvergenceError, apply_laplacian, solve_poisson
from .presets import PRESETS, Preset, list_presets, preset_config
from .runner import (
    NumericalRunError,
    RunRecord,
    SnapshotInfo,
    pair_sample_times,
    read_metric_csv,
    read_snapshot_csv,
    run_pair,
    run_refinement,
    run_single,
    run_sweep,
    write_metric_csv,
    write_snapshot_csv,
)
from .solver import (
    BlowupError,
    DGField,
    InvalidStateError,
    RunStats,
    SolverError,
    TimeController,
    dg_rhs,
    field_max_wave_speed,
    lax_friedrichs_flux,
    max_wave_speed,
    physical_flux,
    positivity_limiter,
    pressure,
    run,
    sound_speed,
    ssp_rk3_step,
)
