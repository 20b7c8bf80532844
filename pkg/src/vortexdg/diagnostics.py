"""Cell-center diagnostics: velocity, vorticity, norms, peak counting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .grid import Grid
from .solver import DGField

__all__ = [
    "CenterField",
    "MetricSeries",
    "center_velocity",
    "vorticity_field",
    "state_vorticity",
    "l1_distance",
    "l2_density_error",
    "conserved_totals",
    "peak_components",
    "count_peaks",
]


@dataclass(eq=False)
class CenterField:
    """Scalar cell-center samples; values[i, j] with i along x, shape (N, N)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        n = self.grid.N
        if self.values.shape != (n, n):
            raise ValueError(f"center array must have shape {(n, n)}, got {self.values.shape}")


@dataclass
class MetricSeries:
    """A scalar metric sampled at increasing times."""

    times: tuple[float, ...]
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")


def center_velocity(field: DGField, rho_floor: float = 1e-13) -> tuple[CenterField, CenterField]:
    """Cell-center velocity m / rho from the average coefficients.

    The density in the division is clipped below at rho_floor, the same
    guard the limiter maintains, so near-vacuum cells cannot produce
    infinities.
    """
    avg = field.cell_averages
    rho = np.maximum(avg[0], rho_floor)
    return (
        CenterField(field.grid, avg[1] / rho),
        CenterField(field.grid, avg[2] / rho),
    )


def vorticity_field(u: CenterField, v: CenterField) -> CenterField:
    """Vorticity d_y u - d_x v via periodic central differences of center values.

    The sign pairs with the velocity construction (u, v) = (d_y psi,
    -d_x psi): feeding the induced velocity back in reproduces the
    vorticity the stream function was solved for.
    """
    grid = u.grid
    if v.grid != grid:
        raise ValueError("u and v live on different grids")
    dudy = (np.roll(u.values, -1, axis=1) - np.roll(u.values, 1, axis=1)) / (2.0 * grid.dy)
    dvdx = (np.roll(v.values, -1, axis=0) - np.roll(v.values, 1, axis=0)) / (2.0 * grid.dx)
    return CenterField(grid, dudy - dvdx)


def state_vorticity(field: DGField, rho_floor: float = 1e-13) -> CenterField:
    """Vorticity of the cell-center velocity of a DG state."""
    u, v = center_velocity(field, rho_floor)
    return vorticity_field(u, v)


def l1_distance(a: CenterField, b: CenterField) -> float:
    """Discrete L1 distance sum |a - b| dx dy over the domain."""
    if a.grid != b.grid:
        raise ValueError("fields live on different grids")
    return float(np.sum(np.abs(a.values - b.values)) * a.grid.dx * a.grid.dy)


def l2_density_error(coarse: DGField, reference: DGField) -> float:
    """Discrete L2 norm of the density gap against a finer reference.

    The reference polynomial is evaluated at every coarse cell center
    (points on a fine-cell interface take the containing-cell convention
    of floor division; an embedded field gives matching one-sided values
    there, so the choice does not matter for it).
    """
    gc, gr = coarse.grid, reference.grid
    if gc.a != gr.a:
        raise ValueError("grids cover different domains")
    if gr.N <= gc.N:
        raise ValueError("reference grid must be finer than the coarse grid")
    xc, yc = gc.center_x, gc.center_y
    ix = np.minimum((np.floor((xc + gr.a) / gr.dx)).astype(np.int64), gr.N - 1)
    iy = np.minimum((np.floor((yc + gr.a) / gr.dy)).astype(np.int64), gr.N - 1)
    xi = (xc - gr.center_x[ix]) / (0.5 * gr.dx)
    eta = (yc - gr.center_y[iy]) / (0.5 * gr.dy)
    c = reference.coeffs[0]
    ref_vals = (
        c[0][np.ix_(ix, iy)]
        + xi[:, None] * c[1][np.ix_(ix, iy)]
        + eta[None, :] * c[2][np.ix_(ix, iy)]
    )
    gap = coarse.coeffs[0, 0] - ref_vals
    return float(np.sqrt(np.sum(gap * gap) * gc.dx * gc.dy))


def conserved_totals(field: DGField) -> tuple[float, float, float]:
    """(mass, x-momentum, y-momentum) integrals: sum of averages times cell area."""
    area = field.grid.dx * field.grid.dy
    avg = field.cell_averages
    return (
        float(np.sum(avg[0]) * area),
        float(np.sum(avg[1]) * area),
        float(np.sum(avg[2]) * area),
    )


def peak_components(
    omega: CenterField,
    window: float = 0.05,
    tau: float = 0.3,
    min_size: int = 2,
) -> list[tuple[int, tuple[float, float]]]:
    """Connected regions of strong |vorticity| near the origin.

    Restricts |omega| to centers with |x| <= window and |y| <= window,
    thresholds at tau times the window maximum, labels 4-connected
    components, and drops those smaller than min_size cells.  Returns
    (size, centroid) pairs sorted by size, largest first; an all-zero
    window gives an empty list.
    """
    grid = omega.grid
    keep_x = np.abs(grid.center_x) <= window
    keep_y = np.abs(grid.center_y) <= window
    sub = np.abs(omega.values[np.ix_(keep_x, keep_y)])
    if sub.size == 0:
        return []
    peak = sub.max()
    if peak == 0.0:
        return []
    mask = sub >= tau * peak
    labels, count = ndimage.label(mask)  # default structure is 4-connected
    if count == 0:
        return []
    xs = grid.center_x[keep_x]
    ys = grid.center_y[keep_y]
    out = []
    for lab in range(1, count + 1):
        sel = labels == lab
        size = int(np.count_nonzero(sel))
        if size < min_size:
            continue
        ci, cj = np.nonzero(sel)
        out.append((size, (float(np.mean(xs[ci])), float(np.mean(ys[cj])))))
    out.sort(key=lambda item: (-item[0], item[1]))
    return out


def count_peaks(
    omega: CenterField,
    window: float = 0.05,
    tau: float = 0.3,
    min_size: int = 2,
) -> int:
    """Number of distinct strong-vorticity regions near the origin."""
    return len(peak_components(omega, window=window, tau=tau, min_size=min_size))
