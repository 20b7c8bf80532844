"""Serial numba kernels for the P1 DG update.

All loops run in a fixed order with plain IEEE arithmetic (no fastmath),
so repeated runs are bit-identical.  Kernels signal invalid states by
returning -(i * N + j + 1) for the offending cell instead of raising.

Coefficient layout: c[v, k, i, j] with v in {density, x-momentum,
y-momentum}, k in {1, xi, eta} on the reference square [-1, 1]^2, and
cell indices i (along x), j (along y).
"""

from __future__ import annotations

import numpy as np
from numba import njit

# 2-point Gauss abscissa on [-1, 1]; both weights are 1.
_G = 1.0 / np.sqrt(3.0)

# (xi, eta) for the 8 edge-trace states and the 4 volume states of a cell.
_QUAD_STATES = np.array(
    [
        (1.0, -_G), (1.0, _G), (-1.0, -_G), (-1.0, _G),
        (-_G, 1.0), (_G, 1.0), (-_G, -1.0), (_G, -1.0),
        (-_G, -_G), (_G, -_G), (-_G, _G), (_G, _G),
    ]
)


@njit(cache=True)
def max_wave_speed_kernel(c: np.ndarray, A: float, gamma: float) -> float:
    """max(|u|, |v|) + sound speed over all edge-trace and volume Gauss states."""
    N = c.shape[2]
    lam = 0.0
    for i in range(N):
        for j in range(N):
            for q in range(12):
                xi = _QUAD_STATES[q, 0]
                eta = _QUAD_STATES[q, 1]
                rho = c[0, 0, i, j] + xi * c[0, 1, i, j] + eta * c[0, 2, i, j]
                if rho <= 0.0:
                    return -(i * N + j + 1.0)
                m1 = c[1, 0, i, j] + xi * c[1, 1, i, j] + eta * c[1, 2, i, j]
                m2 = c[2, 0, i, j] + xi * c[2, 1, i, j] + eta * c[2, 2, i, j]
                vmax = max(abs(m1), abs(m2)) / rho
                s = vmax + np.sqrt(gamma * A * rho ** (gamma - 1.0))
                if s > lam:
                    lam = s
    return lam


@njit(cache=True)
def rhs_kernel(
    c: np.ndarray,
    dx: float,
    dy: float,
    A: float,
    gamma: float,
    lam: float,
    out: np.ndarray,
) -> float:
    """Semi-discrete rate of change of the coefficients, written into out.

    Weak form per cell and mode: mass * d(coeff)/dt = volume - surface,
    with a single global Lax-Friedrichs speed lam in every numerical
    flux.  Edge quadrature and volume quadrature are 2-point Gauss; the
    mass factors for modes {1, xi, eta} are dx*dy and dx*dy/3.
    """
    N = c.shape[2]
    g = _G
    wv = 0.5 * dy  # vertical edges and x-direction volume factor
    wh = 0.5 * dx  # horizontal edges and y-direction volume factor
    out[:] = 0.0

    # vertical edges: east side of (i, j) against west side of (i+1 mod N, j)
    for i in range(N):
        ii = i + 1 if i + 1 < N else 0
        for j in range(N):
            for q in range(2):
                eta = -g if q == 0 else g
                rL = c[0, 0, i, j] + c[0, 1, i, j] + eta * c[0, 2, i, j]
                mL = c[1, 0, i, j] + c[1, 1, i, j] + eta * c[1, 2, i, j]
                nL = c[2, 0, i, j] + c[2, 1, i, j] + eta * c[2, 2, i, j]
                rR = c[0, 0, ii, j] - c[0, 1, ii, j] + eta * c[0, 2, ii, j]
                mR = c[1, 0, ii, j] - c[1, 1, ii, j] + eta * c[1, 2, ii, j]
                nR = c[2, 0, ii, j] - c[2, 1, ii, j] + eta * c[2, 2, ii, j]
                if rL <= 0.0 or rR <= 0.0:
                    return -(i * N + j + 1.0)
                uL = mL / rL
                uR = mR / rR
                pL = A * rL ** gamma
                pR = A * rR ** gamma
                f0 = 0.5 * (mL + mR) - 0.5 * lam * (rR - rL)
                f1 = 0.5 * ((mL * uL + pL) + (mR * uR + pR)) - 0.5 * lam * (mR - mL)
                f2 = 0.5 * (nL * uL + nR * uR) - 0.5 * lam * (nR - nL)
                s0 = wv * f0
                s1 = wv * f1
                s2 = wv * f2
                # east side of (i, j): outward normal +x, basis (1, +1, eta)
                out[0, 0, i, j] -= s0
                out[0, 1, i, j] -= s0
                out[0, 2, i, j] -= eta * s0
                out[1, 0, i, j] -= s1
                out[1, 1, i, j] -= s1
                out[1, 2, i, j] -= eta * s1
                out[2, 0, i, j] -= s2
                out[2, 1, i, j] -= s2
                out[2, 2, i, j] -= eta * s2
                # west side of (ii, j): outward normal -x, basis (1, -1, eta)
                out[0, 0, ii, j] += s0
                out[0, 1, ii, j] -= s0
                out[0, 2, ii, j] += eta * s0
                out[1, 0, ii, j] += s1
                out[1, 1, ii, j] -= s1
                out[1, 2, ii, j] += eta * s1
                out[2, 0, ii, j] += s2
                out[2, 1, ii, j] -= s2
                out[2, 2, ii, j] += eta * s2

    # horizontal edges: north side of (i, j) against south side of (i, j+1 mod N)
    for i in range(N):
        for j in range(N):
            jj = j + 1 if j + 1 < N else 0
            for q in range(2):
                xi = -g if q == 0 else g
                rB = c[0, 0, i, j] + xi * c[0, 1, i, j] + c[0, 2, i, j]
                mB = c[1, 0, i, j] + xi * c[1, 1, i, j] + c[1, 2, i, j]
                nB = c[2, 0, i, j] + xi * c[2, 1, i, j] + c[2, 2, i, j]
                rT = c[0, 0, i, jj] + xi * c[0, 1, i, jj] - c[0, 2, i, jj]
                mT = c[1, 0, i, jj] + xi * c[1, 1, i, jj] - c[1, 2, i, jj]
                nT = c[2, 0, i, jj] + xi * c[2, 1, i, jj] - c[2, 2, i, jj]
                if rB <= 0.0 or rT <= 0.0:
                    return -(i * N + j + 1.0)
                vB = nB / rB
                vT = nT / rT
                pB = A * rB ** gamma
                pT = A * rT ** gamma
                g0 = 0.5 * (nB + nT) - 0.5 * lam * (rT - rB)
                g1 = 0.5 * (mB * vB + mT * vT) - 0.5 * lam * (mT - mB)
                g2 = 0.5 * ((nB * vB + pB) + (nT * vT + pT)) - 0.5 * lam * (nT - nB)
                s0 = wh * g0
                s1 = wh * g1
                s2 = wh * g2
                # north side of (i, j): outward normal +y, basis (1, xi, +1)
                out[0, 0, i, j] -= s0
                out[0, 1, i, j] -= xi * s0
                out[0, 2, i, j] -= s0
                out[1, 0, i, j] -= s1
                out[1, 1, i, j] -= xi * s1
                out[1, 2, i, j] -= s1
                out[2, 0, i, j] -= s2
                out[2, 1, i, j] -= xi * s2
                out[2, 2, i, j] -= s2
                # south side of (i, jj): outward normal -y, basis (1, xi, -1)
                out[0, 0, i, jj] += s0
                out[0, 1, i, jj] += xi * s0
                out[0, 2, i, jj] -= s0
                out[1, 0, i, jj] += s1
                out[1, 1, i, jj] += xi * s1
                out[1, 2, i, jj] -= s1
                out[2, 0, i, jj] += s2
                out[2, 1, i, jj] += xi * s2
                out[2, 2, i, jj] -= s2

    # volume terms: 2x2 tensor Gauss, gradients of (xi, eta) pull in
    # dy/2 for the x-flux and dx/2 for the y-flux after mapping
    for i in range(N):
        for j in range(N):
            for q in range(4):
                xi = _QUAD_STATES[8 + q, 0]
                eta = _QUAD_STATES[8 + q, 1]
                rho = c[0, 0, i, j] + xi * c[0, 1, i, j] + eta * c[0, 2, i, j]
                if rho <= 0.0:
                    return -(i * N + j + 1.0)
                m1 = c[1, 0, i, j] + xi * c[1, 1, i, j] + eta * c[1, 2, i, j]
                m2 = c[2, 0, i, j] + xi * c[2, 1, i, j] + eta * c[2, 2, i, j]
                u = m1 / rho
                v = m2 / rho
                p = A * rho ** gamma
                out[0, 1, i, j] += wv * m1
                out[1, 1, i, j] += wv * (m1 * u + p)
                out[2, 1, i, j] += wv * (m2 * u)
                out[0, 2, i, j] += wh * m2
                out[1, 2, i, j] += wh * (m1 * v)
                out[2, 2, i, j] += wh * (m2 * v + p)

    inv_mass = 1.0 / (dx * dy)
    inv_mass3 = 3.0 * inv_mass
    for v_ in range(3):
        for i in range(N):
            for j in range(N):
                out[v_, 0, i, j] *= inv_mass
                out[v_, 1, i, j] *= inv_mass3
                out[v_, 2, i, j] *= inv_mass3
    return 0.0


@njit(cache=True, inline="always")
def _cell_corner_min(avg: float, c1: float, c2: float) -> float:
    # evaluate the four corners exactly as evaluate(+-1, +-1) rounds them:
    # (avg + s1*c1) + s2*c2.  The abs-sum shortcut avg - (|c1|+|c2|) rounds
    # differently and can disagree by an ulp, so the floor is defined on
    # the corner evaluations themselves.
    mn = (avg - c1) - c2
    v = (avg + c1) - c2
    if v < mn:
        mn = v
    v = (avg - c1) + c2
    if v < mn:
        mn = v
    v = (avg + c1) + c2
    if v < mn:
        mn = v
    return mn


@njit(cache=True)
def limiter_kernel(c: np.ndarray, floor: float) -> float:
    """Scale density slopes so the density at every cell corner stays >= floor.

    Cell averages are never modified.  Returns the post-limit minimum
    corner density, or the negative cell code if an average sits below
    the floor (which the limiter cannot repair).
    """
    N = c.shape[2]
    gmin = np.inf
    for i in range(N):
        for j in range(N):
            avg = c[0, 0, i, j]
            if avg < floor:
                return -(i * N + j + 1.0)
            mn = _cell_corner_min(avg, c[0, 1, i, j], c[0, 2, i, j])
            if mn < floor:
                # avg - mn > avg - floor >= 0 here, so theta is in [0, 1).
                # One scaling can undershoot the floor by a few ulp of avg
                # (catastrophic cancellation in the corner sums), so repeat
                # the correction until the floor holds; the slopes shrink
                # every pass, and zeroing them is the exact fallback (the
                # cell average itself is >= floor).
                for _ in range(8):
                    theta = (avg - floor) / (avg - mn)
                    if theta > 1.0:
                        theta = 1.0
                    c[0, 1, i, j] *= theta
                    c[0, 2, i, j] *= theta
                    mn = _cell_corner_min(avg, c[0, 1, i, j], c[0, 2, i, j])
                    if mn >= floor:
                        break
                if mn < floor:
                    c[0, 1, i, j] = 0.0
                    c[0, 2, i, j] = 0.0
                    mn = avg
            if mn < gmin:
                gmin = mn
    return gmin


@njit(cache=True)
def corner_min_kernel(c: np.ndarray) -> float:
    """Minimum over cells of the four corner density evaluations."""
    N = c.shape[2]
    gmin = np.inf
    for i in range(N):
        for j in range(N):
            mn = _cell_corner_min(c[0, 0, i, j], c[0, 1, i, j], c[0, 2, i, j])
            if mn < gmin:
                gmin = mn
    return gmin
