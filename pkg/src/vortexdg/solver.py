"""P1 discontinuous-Galerkin solver for 2D isentropic Euler flow.

Conserved variables are (rho, m1, m2) = (density, x-momentum,
y-momentum) with pressure p = A * rho**gamma.  Each cell carries three
coefficients per variable for the basis {1, xi, eta} on the reference
square [-1, 1]^2.  Interfaces use a global Lax-Friedrichs flux, density
positivity is enforced by a slope limiter, and time stepping is the
three-stage strong-stability-preserving Runge-Kutta scheme.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .grid import Grid
from .params import FluidParams

__all__ = [
    "DGField",
    "TimeController",
    "RunStats",
    "SolverError",
    "InvalidStateError",
    "BlowupError",
    "pressure",
    "sound_speed",
    "physical_flux",
    "max_wave_speed",
    "lax_friedrichs_flux",
    "field_max_wave_speed",
    "dg_rhs",
    "positivity_limiter",
    "ssp_rk3_step",
    "run",
]


class SolverError(RuntimeError):
    """Base class for solver failures."""


class InvalidStateError(SolverError):
    """A quadrature state or cell average violated density positivity."""

    def __init__(self, message: str, cell: tuple[int, int] | None = None, t: float | None = None):
        where = f" in cell {cell}" if cell is not None else ""
        when = f" at t={t:.6g}" if t is not None else ""
        super().__init__(message + where + when)
        self.cell = cell
        self.t = t


class BlowupError(SolverError):
    """The run produced non-finite values or the time step collapsed."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message + (f" at t={t:.6g}" if t is not None else ""))
        self.t = t


def _decode_cell(code: float, N: int) -> tuple[int, int]:
    flat = int(-code) - 1
    return flat // N, flat % N


@dataclass(eq=False)
class DGField:
    """Per-cell P1 coefficients of the conserved variables.

    coeffs has shape (3, 3, N, N): conserved variable, basis mode
    {1, xi, eta}, then cell indices (i along x, j along y).  The value at
    reference point (xi, eta) of cell (i, j) is
    coeffs[v, 0, i, j] + xi * coeffs[v, 1, i, j] + eta * coeffs[v, 2, i, j].
    """

    grid: Grid
    fluid: FluidParams
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.float64)
        shape = (3, 3, self.grid.N, self.grid.N)
        if self.coeffs.shape != shape:
            raise ValueError(f"coeffs must have shape {shape}, got {self.coeffs.shape}")

    @classmethod
    def uniform(
        cls, grid: Grid, fluid: FluidParams, rho: float = 1.0, u: float = 0.0, v: float = 0.0
    ) -> "DGField":
        """Spatially constant state (a steady solution of the scheme)."""
        if rho <= 0.0:
            raise ValueError(f"density must be positive, got {rho}")
        coeffs = np.zeros((3, 3, grid.N, grid.N))
        coeffs[0, 0] = rho
        coeffs[1, 0] = rho * u
        coeffs[2, 0] = rho * v
        return cls(grid, fluid, coeffs)

    def copy(self) -> "DGField":
        return DGField(self.grid, self.fluid, self.coeffs.copy())

    @property
    def cell_averages(self) -> np.ndarray:
        """View of the mode-0 coefficients, shape (3, N, N)."""
        return self.coeffs[:, 0]

    def evaluate(self, xi: float, eta: float) -> np.ndarray:
        """All conserved variables at one reference point, shape (3, N, N)."""
        c = self.coeffs
        return c[:, 0] + xi * c[:, 1] + eta * c[:, 2]

    def corner_min_density(self) -> float:
        return float(_kernels.corner_min_kernel(self.coeffs))


def pressure(rho, fluid: FluidParams):
    """Isentropic pressure A * rho**gamma; rejects non-positive density."""
    rho = np.asarray(rho, dtype=np.float64)
    if np.any(rho <= 0.0):
        raise InvalidStateError("pressure evaluated at non-positive density")
    return fluid.A * rho**fluid.gamma


def sound_speed(rho, fluid: FluidParams):
    """sqrt(gamma * A * rho**(gamma - 1))."""
    rho = np.asarray(rho, dtype=np.float64)
    if np.any(rho <= 0.0):
        raise InvalidStateError("sound speed evaluated at non-positive density")
    return np.sqrt(fluid.gamma * fluid.A * rho ** (fluid.gamma - 1.0))


def _check_axis(axis: str) -> bool:
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return axis == "x"


def physical_flux(U, axis: str, fluid: FluidParams) -> np.ndarray:
    """Exact flux of (rho, m1, m2) in the given direction, stacked on axis 0."""
    rho, m1, m2 = (np.asarray(c, dtype=np.float64) for c in U)
    p = pressure(rho, fluid)
    if _check_axis(axis):
        return np.stack([m1, m1 * (m1 / rho) + p, m2 * (m1 / rho)])
    return np.stack([m2, m1 * (m2 / rho), m2 * (m2 / rho) + p])


def max_wave_speed(U, fluid: FluidParams):
    """Directional wave-speed bound max(|u|, |v|) + sound speed."""
    rho, m1, m2 = (np.asarray(c, dtype=np.float64) for c in U)
    c = sound_speed(rho, fluid)
    return np.maximum(np.abs(m1), np.abs(m2)) / rho + c


def lax_friedrichs_flux(UL, UR, axis: str, lam: float, fluid: FluidParams) -> np.ndarray:
    """Global Lax-Friedrichs flux (F(UL) + F(UR)) / 2 - lam * (UR - UL) / 2.

    With UL == UR this reduces to the physical flux exactly (the jump
    term is a multiplication by zero, the average halves a doubled
    value), which is what keeps constant states exactly steady.
    """
    FL = physical_flux(UL, axis, fluid)
    FR = physical_flux(UR, axis, fluid)
    jump = np.stack([np.asarray(r) - np.asarray(l) for l, r in zip(UL, UR)])
    return 0.5 * (FL + FR) - 0.5 * lam * jump


def field_max_wave_speed(field: DGField) -> float:
    """Global wave-speed bound over all cells' edge and volume Gauss states."""
    lam = _kernels.max_wave_speed_kernel(field.coeffs, field.fluid.A, field.fluid.gamma)
    if lam < 0.0:
        raise InvalidStateError(
            "non-positive density at a quadrature state",
            cell=_decode_cell(lam, field.grid.N),
        )
    return float(lam)


def dg_rhs(field: DGField, lam: float) -> np.ndarray:
    """Semi-discrete time derivative of the coefficients, shape (3, 3, N, N).

    lam is the global Lax-Friedrichs speed, normally
    field_max_wave_speed(field) of the same stage state.
    """
    out = np.empty_like(field.coeffs)
    status = _kernels.rhs_kernel(
        field.coeffs,
        field.grid.dx,
        field.grid.dy,
        field.fluid.A,
        field.fluid.gamma,
        lam,
        out,
    )
    if status < 0.0:
        raise InvalidStateError(
            "non-positive density at a quadrature state",
            cell=_decode_cell(status, field.grid.N),
        )
    return out


def positivity_limiter(field: DGField, rho_floor: float) -> DGField:
    """Rescale density slopes so corner densities stay at or above rho_floor.

    Conservative: cell averages are untouched.  Raises InvalidStateError
    if some cell-average density is already below the floor, which slope
    scaling cannot repair.
    """
    if rho_floor <= 0.0:
        raise ValueError(f"rho_floor must be positive, got {rho_floor}")
    out = field.copy()
    _limit_inplace(out, rho_floor)
    return out


def _limit_inplace(field: DGField, rho_floor: float) -> float:
    status = _kernels.limiter_kernel(field.coeffs, rho_floor)
    if status < 0.0:
        raise InvalidStateError(
            "cell-average density fell below the positivity floor",
            cell=_decode_cell(status, field.grid.N),
        )
    return float(status)


@dataclass
class RunStats:
    """Accumulated step diagnostics for one run."""

    steps: int = 0
    min_corner_density: float = np.inf
    wall_seconds: float = 0.0


@dataclass
class TimeController:
    """CFL-limited clock: dt = cfl * min(dx, dy) / lam_max, truncated at outputs.

    cfl must respect the P1 positivity bound cfl <= 1/3.
    """

    t_end: float
    cfl: float = 0.1
    t: float = 0.0
    lam_max: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl <= 1.0 / 3.0 + 1e-15:
            raise ValueError(f"cfl must lie in (0, 1/3], got {self.cfl}")
        if not np.isfinite(self.t_end) or self.t_end < self.t:
            raise ValueError(f"t_end={self.t_end} precedes t={self.t}")


def ssp_rk3_step(
    field: DGField,
    dt: float,
    rho_floor: float = 1e-13,
    rhs: Callable[[DGField], np.ndarray] | None = None,
    stats: RunStats | None = None,
    lam0: float | None = None,
) -> DGField:
    """One strong-stability-preserving RK3 step with the limiter after each stage.

    u1 = L(u + dt f(u)); u2 = L(3/4 u + 1/4 (u1 + dt f(u1)));
    u_next = L(1/3 u + 2/3 (u2 + dt f(u2))), where L is the positivity
    limiter.  rhs overrides the DG right-hand side (for operator tests);
    the default recomputes the global wave speed at every stage.
    """
    if not (np.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive, got {dt}")

    def euler(w: DGField, lam_hint: float | None) -> DGField:
        if rhs is None:
            lam = field_max_wave_speed(w) if lam_hint is None else lam_hint
            incr = dg_rhs(w, lam)
        else:
            incr = rhs(w)
        return DGField(w.grid, w.fluid, w.coeffs + dt * incr)

    def limit(w: DGField) -> DGField:
        mn = _limit_inplace(w, rho_floor)
        if stats is not None and mn < stats.min_corner_density:
            stats.min_corner_density = mn
        return w

    u = field.coeffs
    u1 = limit(euler(field, lam0))
    u2 = limit(
        DGField(field.grid, field.fluid, 0.75 * u + 0.25 * euler(u1, None).coeffs)
    )
    u3 = limit(
        DGField(
            field.grid,
            field.fluid,
            (1.0 / 3.0) * u + (2.0 / 3.0) * euler(u2, None).coeffs,
        )
    )
    if stats is not None:
        stats.steps += 1
    return u3


def _validate_output_times(output_times: Iterable[float], t0: float, t_end: float, eps: float):
    outs = sorted(float(t) for t in output_times)
    for t in outs:
        if not np.isfinite(t) or t < t0 - eps or t > t_end + eps:
            raise ValueError(f"output time {t} outside [{t0}, {t_end}]")
    return outs


def run(
    field: DGField,
    tc: TimeController,
    output_times: Iterable[float] = (),
    hook: Callable[[float, DGField], None] | None = None,
    rho_floor: float = 1e-13,
    stats: RunStats | None = None,
) -> DGField:
    """Advance field from tc.t to tc.t_end; hook(t, field) fires at output times.

    The step size is cfl * min(dx, dy) / lam_max with lam_max recomputed
    from the current state every step (and every RK stage), truncated so
    the run lands exactly on each requested output time and on t_end.
    Raises BlowupError on non-finite values or a collapsing step.
    """
    t_start = _time.perf_counter()
    span = max(abs(tc.t_end), 1.0)
    eps = 1e-12 * span
    outs = _validate_output_times(output_times, tc.t, tc.t_end, eps)
    k = 0
    while k < len(outs) and outs[k] <= tc.t + eps:
        if hook is not None:
            hook(outs[k], field)
        k += 1
    h = min(field.grid.dx, field.grid.dy)
    while tc.t < tc.t_end - eps:
        lam = field_max_wave_speed(field)
        tc.lam_max = lam
        dt = tc.cfl * h / lam
        if dt < 1e-13 * span:
            raise BlowupError(f"time step collapsed to {dt:.3e}", t=tc.t)
        target = outs[k] if k < len(outs) else tc.t_end
        if tc.t + dt >= target - eps:
            dt = target - tc.t
        field = ssp_rk3_step(field, dt, rho_floor=rho_floor, stats=stats, lam0=lam)
        tc.t = target if abs(tc.t + dt - target) <= eps else tc.t + dt
        if not np.all(np.isfinite(field.coeffs)):
            raise BlowupError("non-finite coefficients", t=tc.t)
        while k < len(outs) and outs[k] <= tc.t + eps:
            if hook is not None:
                hook(outs[k], field)
            k += 1
    if stats is not None:
        stats.wall_seconds += _time.perf_counter() - t_start
    return field
