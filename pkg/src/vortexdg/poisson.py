"""Five-point Poisson solve with zero Dirichlet boundary, for the stream function."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.fft

from .grid import Grid

__all__ = [
    "NodeField",
    "PoissonConvergenceError",
    "apply_laplacian",
    "solve_poisson",
]


@dataclass(eq=False)
class NodeField:
    """Scalar samples on grid nodes; values[i, j] with i along x, shape (N+1, N+1)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        n = self.grid.N + 1
        if self.values.shape != (n, n):
            raise ValueError(
                f"node array must have shape {(n, n)}, got {self.values.shape}"
            )

    @classmethod
    def zeros(cls, grid: Grid) -> "NodeField":
        return cls(grid, np.zeros((grid.N + 1, grid.N + 1)))

    @classmethod
    def sample(cls, grid: Grid, fn: Callable) -> "NodeField":
        """Sample a vectorized callable fn(X, Y) on the node mesh."""
        X, Y = grid.node_mesh()
        return cls(grid, np.asarray(fn(X, Y), dtype=np.float64))

    def copy(self) -> "NodeField":
        return NodeField(self.grid, self.values.copy())


class PoissonConvergenceError(RuntimeError):
    """Raised when the solve cannot certify the requested relative residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (relative residual {residual:.3e})")
        self.residual = residual


def apply_laplacian(psi: NodeField) -> np.ndarray:
    """Five-point Laplacian of psi at the interior nodes, shape (N-1, N-1).

    Boundary values of psi enter the stencil; they are not assumed zero
    here so the same routine can verify residuals of embedded solutions.
    """
    v = psi.values
    h2 = psi.grid.dx * psi.grid.dy
    return (
        v[2:, 1:-1] + v[:-2, 1:-1] + v[1:-1, 2:] + v[1:-1, :-2] - 4.0 * v[1:-1, 1:-1]
    ) / h2


def _l2(arr: np.ndarray) -> float:
    return float(np.sqrt(np.sum(arr * arr)))


def _neg_laplacian_interior(p: np.ndarray, h2: float) -> np.ndarray:
    # interior-only operand; the zero Dirichlet ring is implicit
    q = np.zeros((p.shape[0] + 2, p.shape[1] + 2))
    q[1:-1, 1:-1] = p
    return (4.0 * p - q[2:, 1:-1] - q[:-2, 1:-1] - q[1:-1, 2:] - q[1:-1, :-2]) / h2


def _solve_dst(grid: Grid, rhs: np.ndarray) -> np.ndarray:
    """Direct sine-transform solve of the five-point system on the interior.

    The discrete eigenvalues of the 1D second-difference operator with
    zero Dirichlet ends are -(2 - 2 cos(k pi / N)) / h^2, k = 1..N-1; the
    2D solve divides mode (k, l) by the eigenvalue sum.
    """
    N = grid.N
    h2 = grid.dx * grid.dy
    k = np.arange(1, N)
    mu = (2.0 - 2.0 * np.cos(np.pi * k / N)) / h2
    rhs_hat = scipy.fft.dstn(rhs, type=1)
    psi_hat = -rhs_hat / (mu[:, None] + mu[None, :])
    # type-1 DST is its own inverse up to normalization handled by idstn
    return scipy.fft.idstn(psi_hat, type=1)


def _solve_cg(grid: Grid, rhs: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Conjugate gradient on the SPD system (-lap) psi = -rhs.

    Reductions use fixed-order numpy sums, so repeated solves are
    bit-identical.
    """
    h2 = grid.dx * grid.dy
    b = -rhs
    bnorm = _l2(b)
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(np.sum(r * r))
    for _ in range(max_iter):
        if np.sqrt(rs) <= tol * bnorm:
            return x
        Ap = _neg_laplacian_interior(p, h2)
        alpha = rs / float(np.sum(p * Ap))
        x += alpha * p
        r -= alpha * Ap
        rs_next = float(np.sum(r * r))
        p = r + (rs_next / rs) * p
        rs = rs_next
    if np.sqrt(rs) <= tol * bnorm:
        return x
    raise PoissonConvergenceError(
        f"conjugate gradient stalled after {max_iter} iterations", np.sqrt(rs) / bnorm
    )


def solve_poisson(
    grid: Grid,
    omega: NodeField,
    tol: float = 1e-10,
    method: str = "dst",
    max_iter: int | None = None,
) -> NodeField:
    """Solve lap(psi) = omega at interior nodes with psi = 0 on the boundary.

    Every solve is verified: the returned psi satisfies
    ||lap(psi) - omega||_2 <= tol * ||omega||_2 over the interior nodes,
    else PoissonConvergenceError is raised.  Boundary samples of omega
    are ignored.  method "dst" is a direct sine-transform solve (exact up
    to roundoff); "cg" is conjugate gradient with an iteration cap of
    max_iter (default 50 * N).
    """
    if omega.grid != grid:
        raise ValueError("omega is sampled on a different grid")
    if method not in ("dst", "cg"):
        raise ValueError(f"unknown Poisson method {method!r}")
    rhs = omega.values[1:-1, 1:-1]
    if not np.all(np.isfinite(rhs)):
        raise ValueError("vorticity has non-finite interior values")
    psi = NodeField.zeros(grid)
    rhs_norm = _l2(rhs)
    if rhs_norm == 0.0:
        return psi
    if method == "dst":
        interior = _solve_dst(grid, rhs)
    else:
        cap = max_iter if max_iter is not None else 50 * grid.N
        interior = _solve_cg(grid, rhs, tol, cap)
    psi.values[1:-1, 1:-1] = interior
    residual = _l2(apply_laplacian(psi) - rhs) / rhs_norm
    if residual > tol:
        raise PoissonConvergenceError(
            f"{method} solve missed the residual target {tol:g}", residual
        )
    return psi
