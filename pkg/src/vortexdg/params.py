"""Parameter bundles for the initial data and the gas law."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["VorticityParams", "FluidParams"]


@dataclass(frozen=True)
class VorticityParams:
    """Wedge-vortex initial data knobs.

    alpha is the radial decay exponent of the vorticity, theta0 the
    angular half-width of the wedge, epsilon the mollification radius,
    and case selects how the core r <= epsilon is filled:

    * case 0: constant plateau epsilon**(-alpha),
    * case 1: epsilon**(-alpha) times the angular profile,
    * case 2: zero.
    """

    alpha: float
    theta0: float
    epsilon: float
    case: int

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 2.0:
            raise ValueError(f"alpha must lie in (0, 2), got {self.alpha}")
        if not 0.0 < self.theta0 < 0.5 * math.pi:
            raise ValueError(f"theta0 must lie in (0, pi/2), got {self.theta0}")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.case not in (0, 1, 2):
            raise ValueError(f"case must be 0, 1 or 2, got {self.case}")


@dataclass(frozen=True)
class FluidParams:
    """Isentropic gas law p = A * rho**gamma plus the density profile exponent.

    beta sets the initial density rho0 = r**beta (beta = 0 means uniform
    density 1, the nearly-incompressible regime).
    """

    beta: float = 0.0
    A: float = 1.0
    gamma: float = 1.4

    def __post_init__(self) -> None:
        if not 0.0 <= self.beta <= 2.0:
            raise ValueError(f"beta must lie in [0, 2], got {self.beta}")
        if not (math.isfinite(self.A) and self.A > 0.0):
            raise ValueError(f"pressure coefficient A must be positive, got {self.A}")
        if not 1.0 < self.gamma <= 3.0:
            raise ValueError(f"gamma must lie in (1, 3], got {self.gamma}")
