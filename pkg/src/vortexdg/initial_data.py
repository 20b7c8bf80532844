"""Wedge-vortex initial data: vorticity, stream function, velocity, density.

The construction runs vorticity -> stream function (Poisson solve with
zero boundary) -> velocity (u, v) = (d_y psi, -d_x psi) at grid nodes,
then builds per-cell P1 coefficients from the SW, SE and NW corner
nodes.  Momenta are formed pointwise at corners before interpolation.
"""

from __future__ import annotations

import numpy as np

from .grid import Grid, polar
from .params import FluidParams, VorticityParams
from .poisson import NodeField, solve_poisson
from .solver import DGField, positivity_limiter

__all__ = [
    "angular_profile",
    "base_vorticity",
    "case_vorticity",
    "initial_density",
    "node_velocities",
    "assemble_dg_state",
    "build_initial_state",
]


def angular_profile(theta, theta0: float):
    """Pi-periodic hat profile: theta0 - |t| on |t| < theta0, else 0.

    t is theta folded into (-pi/2, pi/2].  The two wedges around angles
    0 and pi carry identical profiles.
    """
    theta = np.asarray(theta, dtype=np.float64)
    t = 0.5 * np.pi - np.mod(0.5 * np.pi - theta, np.pi)
    out = np.where(np.abs(t) < theta0, theta0 - np.abs(t), 0.0)
    return out if out.ndim else float(out)


def base_vorticity(r, theta, params: VorticityParams):
    """Unmollified vorticity r**(-alpha) * angular_profile(theta); needs r > 0."""
    r = np.asarray(r, dtype=np.float64)
    if np.any(r <= 0.0):
        raise ValueError("base vorticity is singular at r = 0; pass r > 0")
    out = r ** (-params.alpha) * angular_profile(theta, params.theta0)
    return out if out.ndim else float(out)


def case_vorticity(r, theta, params: VorticityParams):
    """Vorticity with the core r <= epsilon replaced per params.case.

    Outside the core this is base_vorticity; inside it is the constant
    plateau epsilon**(-alpha) (case 0), the plateau times the angular
    profile (case 1), or zero (case 2).
    """
    r = np.asarray(r, dtype=np.float64)
    theta = np.asarray(theta, dtype=np.float64)
    scalar = r.ndim == 0 and theta.ndim == 0
    r_b, th_b = np.broadcast_arrays(np.atleast_1d(r), np.atleast_1d(theta))
    out = np.empty(r_b.shape, dtype=np.float64)
    outside = r_b > params.epsilon
    out[outside] = base_vorticity(r_b[outside], th_b[outside], params)
    core = params.epsilon ** (-params.alpha)
    if params.case == 0:
        out[~outside] = core
    elif params.case == 1:
        out[~outside] = core * angular_profile(th_b[~outside], params.theta0)
    else:
        out[~outside] = 0.0
    return float(out[0]) if scalar else out


def initial_density(r, beta: float, rho_floor: float = 1e-10):
    """Initial density r**beta clipped below at rho_floor; beta = 0 gives 1."""
    r = np.asarray(r, dtype=np.float64)
    if beta == 0.0:
        out = np.ones_like(r)
    else:
        out = np.maximum(r**beta, rho_floor)
    return out if out.ndim else float(out)


def node_velocities(psi: NodeField) -> tuple[NodeField, NodeField]:
    """(u, v) = (d_y psi, -d_x psi) by central differences at all nodes.

    The stencil extends psi by zero outside the boundary ring, matching
    the homogeneous Dirichlet condition of the stream function solve.
    """
    grid = psi.grid
    p = np.zeros((grid.N + 3, grid.N + 3))
    p[1:-1, 1:-1] = psi.values
    u = (p[1:-1, 2:] - p[1:-1, :-2]) / (2.0 * grid.dy)
    v = -(p[2:, 1:-1] - p[:-2, 1:-1]) / (2.0 * grid.dx)
    return NodeField(grid, u), NodeField(grid, v)


def assemble_dg_state(
    grid: Grid,
    rho: NodeField,
    u: NodeField,
    v: NodeField,
    fluid: FluidParams,
    rho_floor: float = 1e-10,
) -> DGField:
    """P1 coefficients from the SW, SE, NW corner nodes of every cell.

    With corner values f_sw, f_se, f_nw the reference-square coefficients
    are c1 = (f_se - f_sw)/2, c2 = (f_nw - f_sw)/2, c0 = (f_se + f_nw)/2.
    Momenta are products of the corner samples.  The positivity limiter
    runs once before the state is returned; corner densities must already
    sit at or above rho_floor for the cell averages to pass its check.
    """

    def corners(nf: NodeField):
        val = nf.values
        return val[:-1, :-1], val[1:, :-1], val[:-1, 1:]

    def p1(sw, se, nw):
        return 0.5 * (se + nw), 0.5 * (se - sw), 0.5 * (nw - sw)

    r_c = corners(rho)
    u_c = corners(u)
    v_c = corners(v)
    coeffs = np.empty((3, 3, grid.N, grid.N))
    coeffs[0] = p1(*r_c)
    coeffs[1] = p1(*(rc * uc for rc, uc in zip(r_c, u_c)))
    coeffs[2] = p1(*(rc * vc for rc, vc in zip(r_c, v_c)))
    return positivity_limiter(DGField(grid, fluid, coeffs), rho_floor)


def build_initial_state(
    grid: Grid,
    vparams: VorticityParams,
    fluid: FluidParams,
    rho_floor: float = 1e-10,
    poisson_tol: float = 1e-10,
    poisson_method: str = "dst",
) -> DGField:
    """Full pipeline from the vorticity parameters to a limited DG state."""
    X, Y = grid.node_mesh()
    r, theta = polar(X, Y)
    omega = NodeField(grid, case_vorticity(r, theta, vparams))
    psi = solve_poisson(grid, omega, tol=poisson_tol, method=poisson_method)
    u, v = node_velocities(psi)
    rho = NodeField(grid, initial_density(r, fluid.beta, rho_floor))
    return assemble_dg_state(grid, rho, u, v, fluid, rho_floor)
