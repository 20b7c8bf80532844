"""Uniform periodic Cartesian mesh on the square [-a, a]^2."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = ["Grid", "build_grid", "polar"]


@dataclass(frozen=True)
class Grid:
    """Uniform N x N cell mesh on [-a, a]^2 with periodic cell connectivity.

    Axis 0 is x, axis 1 is y.  Nodes carry indices (i, j) with
    i, j in [0, N]; cell (i, j) with i, j in [0, N-1] has nodes (i, j),
    (i+1, j), (i, j+1) and (i+1, j+1) at its corners.  N must be even so
    the origin is exactly a node.

    Node coordinates are built as integer multiples of the cell size, so
    the mesh is exactly symmetric under (x, y) -> (-x, -y) in floating
    point.
    """

    a: float
    N: int

    def __post_init__(self) -> None:
        if not (np.isfinite(self.a) and self.a > 0):
            raise ValueError(f"domain half-width must be positive, got a={self.a}")
        if self.N < 2 or self.N % 2 != 0:
            raise ValueError(f"cell count per side must be even and >= 2, got N={self.N}")

    @property
    def dx(self) -> float:
        return 2.0 * self.a / self.N

    @property
    def dy(self) -> float:
        # square cells only
        return 2.0 * self.a / self.N

    @cached_property
    def node_x(self) -> np.ndarray:
        """Node coordinates along one axis, shape (N + 1,)."""
        return (np.arange(self.N + 1) - self.N // 2) * self.dx

    @cached_property
    def node_y(self) -> np.ndarray:
        return self.node_x.copy()

    @cached_property
    def center_x(self) -> np.ndarray:
        """Cell-center coordinates along one axis, shape (N,)."""
        return 0.5 * (self.node_x[:-1] + self.node_x[1:])

    @cached_property
    def center_y(self) -> np.ndarray:
        return self.center_x.copy()

    def node_mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinate arrays X, Y of shape (N + 1, N + 1), X[i, j] = x_i."""
        return np.meshgrid(self.node_x, self.node_y, indexing="ij")

    def center_mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Cell-center coordinate arrays of shape (N, N)."""
        return np.meshgrid(self.center_x, self.center_y, indexing="ij")


def build_grid(a: float, N: int) -> Grid:
    """Validated Grid constructor."""
    return Grid(a=a, N=N)


def polar(x, y):
    """Cartesian to polar; angle in (-pi, pi] and polar(0, 0) == (0, 0)."""
    return np.hypot(x, y), np.arctan2(y, x)
