"""Wedge-vortex construction tests: profile algebra, corner rules, pipeline."""

import math

import numpy as np
import pytest

from vortexdg import (
    DGField,
    FluidParams,
    NodeField,
    PoissonConvergenceError,
    VorticityParams,
    angular_profile,
    assemble_dg_state,
    base_vorticity,
    build_grid,
    build_initial_state,
    case_vorticity,
    initial_density,
    node_velocities,
    polar,
    solve_poisson,
)

T0 = math.pi / 8.0
VP = dict(alpha=0.95, theta0=T0, epsilon=0.004)


def vparams(case, **over):
    kw = {**VP, **over}
    return VorticityParams(case=case, **kw)


# ---------------------------------------------------------------------------
# angular profile


def test_angular_profile_worked_examples():
    assert angular_profile(0.0, T0) == pytest.approx(T0, abs=1e-16)
    assert angular_profile(0.0, T0) == pytest.approx(0.39270, abs=5e-6)
    assert angular_profile(T0, T0) == 0.0
    assert angular_profile(math.pi, T0) == pytest.approx(T0, abs=1e-15)


def test_angular_profile_support_and_range():
    theta = np.linspace(-4.0 * math.pi, 4.0 * math.pi, 20011)
    phi = angular_profile(theta, T0)
    assert np.all(phi >= 0.0)
    assert np.all(phi <= T0)
    folded = 0.5 * math.pi - np.mod(0.5 * math.pi - theta, math.pi)
    outside = np.abs(folded) >= T0 + 1e-12
    assert np.all(phi[outside] == 0.0)
    inside = np.abs(folded) <= T0 - 1e-12
    assert np.all(phi[inside] > 0.0)


def test_angular_profile_pi_periodic_and_even():
    theta = np.linspace(-3.0, 3.0, 1001)
    np.testing.assert_allclose(
        angular_profile(theta + math.pi, T0), angular_profile(theta, T0), atol=1e-12
    )
    np.testing.assert_allclose(
        angular_profile(-theta, T0), angular_profile(theta, T0), atol=1e-12
    )


# ---------------------------------------------------------------------------
# vorticity families


def test_base_vorticity_worked_examples():
    p = vparams(0)
    assert base_vorticity(1.0, 0.0, p) == pytest.approx(T0, rel=1e-15)
    assert base_vorticity(0.004, 0.0, p) == pytest.approx(
        0.004**-0.95 * T0, rel=1e-14
    )
    assert base_vorticity(0.01, math.pi / 2.0, p) == 0.0


def test_base_vorticity_rejects_origin():
    p = vparams(0)
    for r in (0.0, -0.1):
        with pytest.raises(ValueError, match="r > 0"):
            base_vorticity(r, 0.0, p)
    with pytest.raises(ValueError, match="r > 0"):
        base_vorticity(np.array([0.5, 0.0]), np.zeros(2), p)


def test_case_vorticity_worked_examples():
    assert case_vorticity(0.002, 0.0, vparams(2)) == 0.0
    assert case_vorticity(0.002, 0.0, vparams(0)) == pytest.approx(
        0.004**-0.95, rel=1e-14
    )
    assert case_vorticity(0.002, math.pi / 2.0, vparams(1)) == 0.0
    # r = epsilon belongs to the core branch
    assert case_vorticity(0.004, math.pi / 2.0, vparams(0)) == pytest.approx(
        0.004**-0.95, rel=1e-14
    )


def test_case_one_equals_theta0_times_case_zero_on_axis():
    r = np.array([0.0005, 0.001, 0.002, 0.004])
    w1 = case_vorticity(r, np.zeros_like(r), vparams(1))
    w0 = case_vorticity(r, np.zeros_like(r), vparams(0))
    np.testing.assert_allclose(w1, T0 * w0, rtol=1e-14)


@pytest.mark.parametrize("case", [0, 1, 2])
def test_case_vorticity_antipodal_symmetry(case):
    rng = np.random.default_rng(5)
    r = 0.0005 + 0.3 * rng.random(500)
    theta = 2.0 * math.pi * rng.random(500) - math.pi
    p = vparams(case)
    np.testing.assert_allclose(
        case_vorticity(r, theta + math.pi, p),
        case_vorticity(r, theta, p),
        rtol=1e-12,
        atol=1e-12,
    )


@pytest.mark.parametrize("case", [0, 1, 2])
def test_case_vorticity_vanishes_outside_wedges(case):
    p = vparams(case)
    r = np.full(101, 0.05)
    theta = np.linspace(T0 + 1e-9, math.pi - T0 - 1e-9, 101)
    assert np.all(case_vorticity(r, theta, p) == 0.0)


def test_case_vorticity_matches_base_outside_core():
    p = vparams(1)
    r = np.array([0.005, 0.01, 0.1])
    theta = np.array([0.0, 0.1, -0.3])
    np.testing.assert_allclose(
        case_vorticity(r, theta, p), base_vorticity(r, theta, p), rtol=1e-15
    )


def test_case_vorticity_broadcasting_and_scalars():
    p = vparams(0)
    out = case_vorticity(0.002, np.array([0.0, 1.0, 2.0]), p)
    assert out.shape == (3,)
    out = case_vorticity(np.array([[0.002, 0.05]]), 0.0, p)
    assert out.shape == (1, 2)
    assert isinstance(case_vorticity(0.002, 0.0, p), float)


# ---------------------------------------------------------------------------
# density


def test_initial_density_worked_examples():
    r = np.array([0.0, 1e-6, 0.3, 5.0])
    assert np.array_equal(initial_density(r, 0.0), np.ones(4))
    assert initial_density(0.01, 0.5) == pytest.approx(0.1, rel=1e-14)
    assert initial_density(0.0, 1.0, rho_floor=1e-10) == 1e-10
    assert isinstance(initial_density(0.5, 0.0), float)


def test_initial_density_floor_only_near_origin():
    r = np.array([0.0, 1e-12, 0.01, 0.2])
    rho = initial_density(r, 1.0, rho_floor=1e-10)
    np.testing.assert_allclose(rho, [1e-10, 1e-10, 0.01, 0.2], rtol=1e-15)


# ---------------------------------------------------------------------------
# stream-function differencing


def test_node_velocities_zero_psi():
    grid = build_grid(a=0.2, N=8)
    u, v = node_velocities(NodeField.zeros(grid))
    assert np.array_equal(u.values, np.zeros((9, 9)))
    assert np.array_equal(v.values, np.zeros((9, 9)))


def test_node_velocities_exact_on_bilinear_psi():
    grid = build_grid(a=0.2, N=16)
    X, Y = grid.node_mesh()
    u, v = node_velocities(NodeField(grid, X * Y))
    # central differences are exact on x*y away from the ghost ring
    np.testing.assert_allclose(u.values[1:-1, 1:-1], X[1:-1, 1:-1], atol=1e-13)
    np.testing.assert_allclose(v.values[1:-1, 1:-1], -Y[1:-1, 1:-1], atol=1e-13)


def test_speed_field_point_symmetric_for_case0():
    grid = build_grid(a=0.2, N=64)
    X, Y = grid.node_mesh()
    r, theta = polar(X, Y)
    omega = NodeField(grid, case_vorticity(r, theta, vparams(0)))
    psi = solve_poisson(grid, omega)
    u, v = node_velocities(psi)
    speed = np.hypot(u.values, v.values)
    flipped = speed[::-1, ::-1]
    assert float(np.max(np.abs(speed - flipped))) <= 1e-10 * float(np.max(speed))


# ---------------------------------------------------------------------------
# P1 assembly


def _linear_nodes(grid, f):
    X, Y = grid.node_mesh()
    return NodeField(grid, f(X, Y))


def test_assemble_exact_on_linear_fields():
    grid = build_grid(a=0.2, N=10)
    rho_f = lambda x, y: 2.0 + 3.0 * x - y
    u_f = lambda x, y: 0.5 - x + 2.0 * y
    field = assemble_dg_state(
        grid,
        _linear_nodes(grid, rho_f),
        _linear_nodes(grid, u_f),
        _linear_nodes(grid, lambda x, y: np.zeros_like(x)),
        FluidParams(),
    )
    xc, yc = grid.center_mesh()
    np.testing.assert_allclose(field.coeffs[0, 0], rho_f(xc, yc), rtol=1e-14)
    np.testing.assert_allclose(field.coeffs[0, 1], 3.0 * grid.dx / 2.0, rtol=1e-12)
    np.testing.assert_allclose(field.coeffs[0, 2], -grid.dy / 2.0, rtol=1e-12)
    assert np.array_equal(field.coeffs[2], np.zeros((3, 10, 10)))


def test_assemble_ignores_ne_corner():
    grid = build_grid(a=0.2, N=6)
    rng = np.random.default_rng(9)
    rho = NodeField(grid, 1.0 + rng.random((7, 7)))
    u = NodeField(grid, rng.random((7, 7)))
    v = NodeField(grid, rng.random((7, 7)))
    base = assemble_dg_state(grid, rho, u, v, FluidParams())
    rho2 = rho.copy()
    rho2.values[3, 3] += 10.0  # NE node of cell (2, 2)
    bumped = assemble_dg_state(grid, rho2, u, v, FluidParams())
    assert np.array_equal(base.coeffs[:, :, 2, 2], bumped.coeffs[:, :, 2, 2])
    assert not np.array_equal(base.coeffs[:, :, 3, 3], bumped.coeffs[:, :, 3, 3])


def test_assemble_momenta_are_pointwise_corner_products():
    grid = build_grid(a=0.2, N=6)
    rng = np.random.default_rng(13)
    rho_v = 0.5 + rng.random((7, 7))
    u_v = 2.0 * rng.random((7, 7)) - 1.0
    field = assemble_dg_state(
        grid,
        NodeField(grid, rho_v),
        NodeField(grid, u_v),
        NodeField(grid, np.zeros((7, 7))),
        FluidParams(),
    )
    m = rho_v * u_v
    m_sw, m_se, m_nw = m[:-1, :-1], m[1:, :-1], m[:-1, 1:]
    np.testing.assert_allclose(field.coeffs[1, 0], 0.5 * (m_se + m_nw), rtol=1e-14)
    np.testing.assert_allclose(field.coeffs[1, 1], 0.5 * (m_se - m_sw), rtol=1e-14)
    np.testing.assert_allclose(field.coeffs[1, 2], 0.5 * (m_nw - m_sw), rtol=1e-14)


# ---------------------------------------------------------------------------
# full pipeline


def test_build_zero_vorticity_gives_exact_rest():
    # case 2 with the core covering the whole domain zeroes the vorticity
    grid = build_grid(a=0.2, N=20)
    fluid = FluidParams(beta=0.0)
    field = build_initial_state(grid, vparams(2, epsilon=1.0), fluid)
    expected = DGField.uniform(grid, fluid, rho=1.0)
    assert np.array_equal(field.coeffs, expected.coeffs)


def test_build_case_difference_is_localized():
    # cases 0 and 2 share the vorticity outside the core; their velocity
    # difference peaks at the core rim and falls off like a point vortex
    # of circulation dGamma = pi * eps**(2 - alpha) (the cores differ by
    # the constant eps**-alpha over the disc r <= eps), so the tail at
    # radius r is about dGamma / (2 pi r), roughly eps/r of the peak
    grid = build_grid(a=0.2, N=200)
    X, Y = grid.node_mesh()
    r, theta = polar(X, Y)
    diffs = {}
    for case in (0, 2):
        omega = NodeField(grid, case_vorticity(r, theta, vparams(case)))
        psi = solve_poisson(grid, omega)
        u, v = node_velocities(psi)
        diffs[case] = (u.values, v.values)
    du = diffs[0][0] - diffs[2][0]
    dv = diffs[0][1] - diffs[2][1]
    mag = np.hypot(du, dv)
    far = r > 0.05
    far_max = float(np.max(mag[far]))
    assert far_max < 0.12 * float(np.max(mag))
    d_gamma = math.pi * VP["epsilon"] ** (2.0 - VP["alpha"])
    assert far_max == pytest.approx(d_gamma / (2.0 * math.pi * 0.05), rel=0.35)


def test_build_beta_one_respects_density_floor():
    grid = build_grid(a=0.2, N=40)
    fluid = FluidParams(beta=1.0)
    field = build_initial_state(grid, vparams(1, epsilon=0.02), fluid, rho_floor=1e-10)
    assert field.corner_min_density() >= 1e-10
    assert float(np.min(field.cell_averages[0])) >= 1e-10
    # away from the origin the cell-average density tracks r**beta
    xc, yc = grid.center_mesh()
    rc = np.hypot(xc, yc)
    far = rc > 0.1
    np.testing.assert_allclose(
        field.cell_averages[0][far], rc[far], rtol=0.0, atol=2.0 * grid.dx
    )


@pytest.mark.parametrize("case", [0, 1, 2])
def test_core_families_converge_to_base_profile_in_l1(case):
    # midpoint-rule L1 distance to the unmollified profile, origin cells
    # excluded, shrinks as the core radius halves
    grid = build_grid(a=0.2, N=400)
    xc, yc = grid.center_mesh()
    r, theta = polar(xc, yc)
    keep = ~((np.abs(xc) < grid.dx) & (np.abs(yc) < grid.dy))
    base = base_vorticity(r, theta, vparams(case))
    cell = grid.dx * grid.dy
    dists = []
    for eps in (0.008, 0.004, 0.002):
        w = case_vorticity(r, theta, vparams(case, epsilon=eps))
        dists.append(float(np.sum(np.abs(w - base)[keep])) * cell)
    assert dists[0] > dists[1] > dists[2]


def test_build_propagates_poisson_failure():
    grid = build_grid(a=0.2, N=32)
    with pytest.raises(PoissonConvergenceError):
        build_initial_state(
            grid,
            vparams(0),
            FluidParams(),
            poisson_tol=1e-30,
            poisson_method="cg",
        )
