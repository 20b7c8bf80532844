"""Solver algebra and scheme-property tests.

The DG right-hand side is cross-checked against an independent
vectorized re-derivation of the weak form (rolled arrays instead of
edge loops, different accumulation order), so agreement is a dual-route
check of the discretization rather than a change detector.
"""

import math

import numpy as np
import pytest

from vortexdg import (
    BlowupError,
    DGField,
    FluidParams,
    InvalidStateError,
    RunStats,
    TimeController,
    VorticityParams,
    build_grid,
    build_initial_state,
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

G = 1.0 / math.sqrt(3.0)
FP = FluidParams()


def random_field(grid, fluid, rng, slope=0.1):
    """Random P1 field with all quadrature densities safely positive."""
    N = grid.N
    c = np.zeros((3, 3, N, N))
    c[0, 0] = 1.0 + 0.5 * rng.random((N, N))
    c[0, 1:] = slope * (2.0 * rng.random((2, N, N)) - 1.0)
    c[1:, 0] = 0.4 * (2.0 * rng.random((2, N, N)) - 1.0)
    c[1:, 1:] = slope * (2.0 * rng.random((2, 2, N, N)) - 1.0)
    return DGField(grid, fluid, c)


# ---------------------------------------------------------------------------
# pointwise flux algebra


def test_pressure_worked_examples():
    assert float(pressure(2.0, FP)) == pytest.approx(2.0**1.4, rel=1e-15)
    assert float(pressure(2.0, FP)) == pytest.approx(2.63902, rel=1e-5)
    assert float(pressure(1.0, FluidParams(A=0.01))) == pytest.approx(0.01, rel=1e-15)


@pytest.mark.parametrize("rho", [0.0, -1.0])
def test_pressure_rejects_nonpositive(rho):
    with pytest.raises(InvalidStateError):
        pressure(rho, FP)
    with pytest.raises(InvalidStateError):
        pressure(np.array([1.0, rho, 2.0]), FP)


def test_sound_speed_values():
    assert float(sound_speed(1.0, FP)) == pytest.approx(math.sqrt(1.4), rel=1e-15)
    tiny = float(sound_speed(1e-13, FP))
    assert 0.0 < tiny < 1e-2


def test_physical_flux_worked_examples():
    assert np.array_equal(physical_flux((1.0, 0.0, 0.0), "x", FP), [0.0, 1.0, 0.0])
    assert np.array_equal(physical_flux((1.0, 1.0, 0.0), "x", FP), [1.0, 2.0, 0.0])
    assert np.array_equal(physical_flux((1.0, 0.0, 1.0), "y", FP), [1.0, 0.0, 2.0])


def test_physical_flux_rejects_bad_axis():
    with pytest.raises(ValueError, match="axis"):
        physical_flux((1.0, 0.0, 0.0), "z", FP)


def test_flux_rotational_equivariance_exact():
    rng = np.random.default_rng(7)
    rho = 0.2 + rng.random(1000)
    m1 = 2.0 * rng.random(1000) - 1.0
    m2 = 2.0 * rng.random(1000) - 1.0
    fx = physical_flux((rho, m1, m2), "x", FP)
    fy_swapped = physical_flux((rho, m2, m1), "y", FP)
    assert np.array_equal(fx, fy_swapped[[0, 2, 1]])


def test_max_wave_speed_examples():
    assert float(max_wave_speed((1.0, 0.0, 0.0), FP)) == pytest.approx(
        math.sqrt(1.4), rel=1e-15
    )
    assert float(max_wave_speed((1.0, 2.0, 0.0), FP)) == pytest.approx(
        2.0 + math.sqrt(1.4), rel=1e-15
    )
    assert float(max_wave_speed((1e-13, 0.0, 0.0), FP)) > 0.0


def test_lax_friedrichs_consistency_is_exact():
    rng = np.random.default_rng(11)
    rho = 0.2 + rng.random(1000)
    m1 = 2.0 * rng.random(1000) - 1.0
    m2 = 2.0 * rng.random(1000) - 1.0
    U = np.stack([rho, m1, m2])
    for axis in ("x", "y"):
        for lam in (0.0, 1.7, 1e8):
            lf = lax_friedrichs_flux(U, U, axis, lam, FP)
            assert np.array_equal(lf, physical_flux(U, axis, FP))


def test_lax_friedrichs_worked_example():
    # UL=(1,0,0), UR=(2,0,0), lam=2: independent scalar evaluation.
    lf = lax_friedrichs_flux((1.0, 0.0, 0.0), (2.0, 0.0, 0.0), "x", 2.0, FP)
    mass = 0.5 * (0.0 + 0.0) - 0.5 * 2.0 * (2.0 - 1.0)
    mom = 0.5 * (1.0**1.4 + 2.0**1.4) - 0.5 * 2.0 * (0.0 - 0.0)
    np.testing.assert_allclose(lf.ravel(), [mass, mom, 0.0], rtol=1e-15, atol=0.0)
    assert mass == -1.0


def test_lax_friedrichs_upwinds_against_jump():
    # the jump term must subtract lam/2 * (UR - UL) componentwise
    lf0 = lax_friedrichs_flux((1.0, 0.1, 0.0), (1.5, -0.2, 0.3), "x", 0.0, FP)
    lf2 = lax_friedrichs_flux((1.0, 0.1, 0.0), (1.5, -0.2, 0.3), "x", 2.0, FP)
    jump = np.array([0.5, -0.3, 0.3])
    np.testing.assert_allclose(lf2 - lf0, -jump, rtol=1e-14, atol=1e-16)


# ---------------------------------------------------------------------------
# independent weak-form oracle for the DG right-hand side


def _phys_stack(U, axis, fp):
    rho, m1, m2 = U
    p = fp.A * rho**fp.gamma
    if axis == 0:
        return np.stack([m1, m1 * m1 / rho + p, m2 * m1 / rho])
    return np.stack([m2, m1 * m2 / rho, m2 * m2 / rho + p])


def _lf_stack(UL, UR, axis, lam, fp):
    return 0.5 * (_phys_stack(UL, axis, fp) + _phys_stack(UR, axis, fp)) - (
        0.5 * lam
    ) * (UR - UL)


def oracle_rhs(field, lam):
    """Vectorized weak form: volume Gauss minus edge Gauss, mass-scaled."""
    c = field.coeffs
    fp = field.fluid
    dx, dy = field.grid.dx, field.grid.dy
    rhs = np.zeros_like(c)
    for s in (-G, G):
        # vertical edges: east trace of (i,j) vs west trace of (i+1,j)
        east = c[:, 0] + c[:, 1] + s * c[:, 2]
        west_nb = np.roll(c[:, 0] - c[:, 1] + s * c[:, 2], -1, axis=1)
        f_e = _lf_stack(east, west_nb, 0, lam, fp)
        f_w = np.roll(f_e, 1, axis=1)
        rhs[:, 0] -= 0.5 * dy * (f_e - f_w)
        rhs[:, 1] -= 0.5 * dy * (f_e + f_w)
        rhs[:, 2] -= 0.5 * dy * s * (f_e - f_w)
        # horizontal edges: north trace of (i,j) vs south trace of (i,j+1)
        north = c[:, 0] + s * c[:, 1] + c[:, 2]
        south_nb = np.roll(c[:, 0] + s * c[:, 1] - c[:, 2], -1, axis=2)
        g_n = _lf_stack(north, south_nb, 1, lam, fp)
        g_s = np.roll(g_n, 1, axis=2)
        rhs[:, 0] -= 0.5 * dx * (g_n - g_s)
        rhs[:, 1] -= 0.5 * dx * s * (g_n - g_s)
        rhs[:, 2] -= 0.5 * dx * (g_n + g_s)
    for a in (-G, G):
        for b in (-G, G):
            U = c[:, 0] + a * c[:, 1] + b * c[:, 2]
            rhs[:, 1] += 0.5 * dy * _phys_stack(U, 0, fp)
            rhs[:, 2] += 0.5 * dx * _phys_stack(U, 1, fp)
    rhs[:, 0] /= dx * dy
    rhs[:, 1] *= 3.0 / (dx * dy)
    rhs[:, 2] *= 3.0 / (dx * dy)
    return rhs


def test_dg_rhs_matches_independent_weak_form_random():
    grid = build_grid(a=0.2, N=8)
    field = random_field(grid, FP, np.random.default_rng(3))
    lam = field_max_wave_speed(field)
    expected = oracle_rhs(field, lam)
    got = dg_rhs(field, lam)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(expected))))
    np.testing.assert_allclose(got, expected, rtol=1e-12, atol=tol)


def test_dg_rhs_matches_independent_weak_form_vortex_data():
    grid = build_grid(a=0.2, N=16)
    vp = VorticityParams(alpha=0.95, theta0=math.pi / 8.0, epsilon=0.05, case=1)
    field = build_initial_state(grid, vp, FP)
    lam = field_max_wave_speed(field)
    expected = oracle_rhs(field, lam)
    got = dg_rhs(field, lam)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(expected))))
    np.testing.assert_allclose(got, expected, rtol=1e-12, atol=tol)


@pytest.mark.parametrize("u,v", [(0.0, 0.0), (0.3, -0.2)])
def test_dg_rhs_uniform_states_are_steady(u, v):
    grid = build_grid(a=0.2, N=12)
    field = DGField.uniform(grid, FP, rho=1.0, u=u, v=v)
    lam = field_max_wave_speed(field)
    rate = dg_rhs(field, lam)
    assert float(np.max(np.abs(rate))) <= 1e-12


def test_dg_rhs_single_cell_perturbation_conserves_totals():
    grid = build_grid(a=0.2, N=8)
    field = DGField.uniform(grid, FP, rho=1.0)
    c = field.coeffs
    c[0, 0, 3, 4] = 1.3
    c[:, 1:, 3, 4] = 0.1
    c[1, 0, 3, 4] = 0.3
    lam = field_max_wave_speed(field)
    rate = dg_rhs(field, lam)
    cell = grid.dx * grid.dy
    for q in range(3):
        total_rate = float(np.sum(rate[q, 0])) * cell
        assert abs(total_rate) <= 1e-12


def test_dg_rhs_rejects_nonpositive_quadrature_density():
    grid = build_grid(a=0.2, N=6)
    field = DGField.uniform(grid, FP, rho=1.0)
    field.coeffs[0, 1, 2, 3] = 2.0  # corner density goes to -1
    with pytest.raises(InvalidStateError):
        dg_rhs(field, 2.0)
    with pytest.raises(InvalidStateError) as err:
        field_max_wave_speed(field)
    assert err.value.cell == (2, 3)


# ---------------------------------------------------------------------------
# positivity limiter


def corner_eval_min(coeffs):
    """Per-cell minimum of the four corner densities, rounded exactly as
    evaluate(+-1, +-1) rounds them: (c0 + s1*c1) + s2*c2."""
    c0, c1, c2 = coeffs[0, 0], coeffs[0, 1], coeffs[0, 2]
    corners = np.stack(
        [(c0 - c1) - c2, (c0 + c1) - c2, (c0 - c1) + c2, (c0 + c1) + c2]
    )
    return corners.min(axis=0)


def test_limiter_randomized_property():
    grid = build_grid(a=0.2, N=32)  # 1024 cells
    rng = np.random.default_rng(17)
    N = grid.N
    c = np.zeros((3, 3, N, N))
    c[0, 0] = 1e-3 + 2.0 * rng.random((N, N))
    c[0, 1:] = 3.0 * (2.0 * rng.random((2, N, N)) - 1.0)
    c[1:] = 2.0 * rng.random((2, 3, N, N)) - 1.0
    field = DGField(grid, FP, c)
    floor = 1e-13
    before = field.coeffs.copy()
    limited = positivity_limiter(field, floor)
    out = limited.coeffs
    # input object untouched, averages and momenta bit-identical
    assert np.array_equal(field.coeffs, before)
    assert np.array_equal(out[:, 0], before[:, 0])
    assert np.array_equal(out[1:], before[1:])
    # every corner density ends at or above the floor, with no slack
    assert float(np.min(corner_eval_min(out))) >= floor
    assert limited.corner_min_density() >= floor
    # cells that were already admissible keep their density slopes
    ok = corner_eval_min(before) >= floor
    assert np.array_equal(out[0, 1][ok], before[0, 1][ok])
    assert np.array_equal(out[0, 2][ok], before[0, 2][ok])
    # slopes are only ever shrunk, never grown or flipped
    assert np.all(np.abs(out[0, 1:]) <= np.abs(before[0, 1:]))
    assert np.all(out[0, 1:] * before[0, 1:] >= 0.0)


def test_limiter_worked_example_half_scaling():
    grid = build_grid(a=0.2, N=2)
    c = np.zeros((3, 3, 2, 2))
    c[0, 0] = 1.0
    c[0, 1, 0, 0] = 1.0
    c[0, 2, 0, 0] = 1.0  # corner min = -1
    field = DGField(grid, FP, c)
    floor = 1e-13
    out = positivity_limiter(field, floor).coeffs
    theta = (1.0 - floor) / 2.0
    assert out[0, 1, 0, 0] == pytest.approx(theta, rel=1e-15)
    new_min = float(corner_eval_min(out)[0, 0])
    assert new_min == pytest.approx(floor, rel=1e-2)
    assert new_min >= floor


def test_limiter_leaves_admissible_cell_untouched():
    grid = build_grid(a=0.2, N=2)
    c = np.zeros((3, 3, 2, 2))
    c[0, 0] = 1.0
    c[0, 1] = 0.1
    field = DGField(grid, FP, c)
    out = positivity_limiter(field, 1e-13)
    assert np.array_equal(out.coeffs, c)


def test_limiter_average_below_floor_is_hard_error():
    grid = build_grid(a=0.2, N=4)
    c = np.zeros((3, 3, 4, 4))
    c[0, 0] = 1.0
    c[0, 0, 1, 2] = 5e-14
    field = DGField(grid, FP, c)
    with pytest.raises(InvalidStateError) as err:
        positivity_limiter(field, 1e-13)
    assert err.value.cell == (1, 2)


def test_limiter_rejects_nonpositive_floor():
    grid = build_grid(a=0.2, N=2)
    field = DGField.uniform(grid, FP)
    with pytest.raises(ValueError, match="rho_floor"):
        positivity_limiter(field, 0.0)


# ---------------------------------------------------------------------------
# SSP-RK3 stepping


def test_rk3_linear_surrogate_matches_cubic_taylor():
    grid = build_grid(a=0.2, N=4)
    rng = np.random.default_rng(23)
    c = np.zeros((3, 3, 4, 4))
    c[0, 0] = 1.0
    c[1, 0] = 0.3
    c[2, 0] = -0.2 + 0.1 * rng.random((4, 4))
    field = DGField(grid, FP, c)
    mu, dt = -0.8, 0.25
    z = mu * dt
    out = ssp_rk3_step(field, dt, rhs=lambda w: mu * w.coeffs)
    taylor = 1.0 + z + z**2 / 2.0 + z**3 / 6.0
    np.testing.assert_allclose(out.coeffs, taylor * c, rtol=1e-14, atol=1e-18)


def test_rk3_rest_and_translation_states_unchanged():
    grid = build_grid(a=0.2, N=50)
    for u, v in [(0.0, 0.0), (0.25, -0.4)]:
        field = DGField.uniform(grid, FP, rho=1.0, u=u, v=v)
        lam = field_max_wave_speed(field)
        dt = 0.1 * grid.dx / lam
        out = ssp_rk3_step(field, dt, lam0=lam)
        assert float(np.max(np.abs(out.coeffs - field.coeffs))) <= 1e-14


def test_rk3_step_conserves_totals():
    grid = build_grid(a=0.2, N=16)
    vp = VorticityParams(alpha=0.95, theta0=math.pi / 8.0, epsilon=0.05, case=0)
    field = build_initial_state(grid, vp, FP)
    lam = field_max_wave_speed(field)
    dt = 0.1 * grid.dx / lam
    out = ssp_rk3_step(field, dt, lam0=lam)
    cell = grid.dx * grid.dy
    for q in range(3):
        t0 = float(np.sum(field.coeffs[q, 0])) * cell
        t1 = float(np.sum(out.coeffs[q, 0])) * cell
        assert abs(t1 - t0) <= 1e-13 * max(1.0, abs(t0))


def test_rk3_rejects_bad_dt():
    grid = build_grid(a=0.2, N=4)
    field = DGField.uniform(grid, FP)
    for dt in (0.0, -1e-3, math.nan):
        with pytest.raises(ValueError, match="dt"):
            ssp_rk3_step(field, dt)


def test_rk3_temporal_order_at_least_2p8():
    # fixed mesh, dt halving against a small-dt reference isolates the
    # time discretization; the limiter stays inactive on this smooth field
    grid = build_grid(a=0.2, N=16)
    x, y = grid.center_mesh()
    kx = math.pi / grid.a
    sx, cx = np.sin(kx * x), np.cos(kx * x)
    sy, cy = np.sin(kx * y), np.cos(kx * y)
    hx = 0.5 * grid.dx
    hy = 0.5 * grid.dy

    def p1_coeffs(val, ddx, ddy):
        return np.stack([val, hx * ddx, hy * ddy])

    rho = p1_coeffs(1.0 + 0.2 * sx * sy, 0.2 * kx * cx * sy, 0.2 * kx * sx * cy)
    m1 = p1_coeffs(0.15 * cx * sy, -0.15 * kx * sx * sy, 0.15 * kx * cx * cy)
    m2 = p1_coeffs(-0.15 * sx * cy, -0.15 * kx * cx * cy, 0.15 * kx * sx * sy)
    field = DGField(grid, FP, np.stack([rho, m1, m2], axis=0))

    lam0 = field_max_wave_speed(field)
    dt0 = 0.2 * grid.dx / lam0
    n0 = 8

    def advance(steps):
        dt = n0 * dt0 / steps
        w = field
        for _ in range(steps):
            w = ssp_rk3_step(w, dt)
        return w.coeffs

    ref = advance(16 * n0)
    errs = [float(np.max(np.abs(advance(k * n0) - ref))) for k in (1, 2, 4)]
    orders = [math.log2(errs[k] / errs[k + 1]) for k in range(2)]
    assert min(orders) >= 2.8, f"observed temporal orders {orders}"


# ---------------------------------------------------------------------------
# run loop


def test_run_t_zero_returns_input_unchanged():
    grid = build_grid(a=0.2, N=8)
    field = DGField.uniform(grid, FP, rho=1.2, u=0.1)
    before = field.coeffs.copy()
    seen = []
    out = run(field, TimeController(t_end=0.0), output_times=[0.0], hook=lambda t, f: seen.append(t))
    assert np.array_equal(out.coeffs, before)
    assert seen == [0.0]


def test_run_rest_state_stays_at_rest():
    grid = build_grid(a=0.2, N=20)
    field = DGField.uniform(grid, FP, rho=1.0)
    stats = RunStats()
    out = run(field, TimeController(t_end=0.5), stats=stats)
    assert stats.steps > 50
    assert float(np.max(np.abs(out.coeffs - field.coeffs))) <= 1e-12
    assert stats.min_corner_density >= 1.0 - 1e-12


def test_run_hooks_fire_exactly_on_output_times():
    grid = build_grid(a=0.2, N=8)
    field = DGField.uniform(grid, FP, rho=1.0, u=0.2)
    times = []
    tc = TimeController(t_end=0.1)
    run(field, tc, output_times=[0.0, 0.03, 0.071, 0.1], hook=lambda t, f: times.append(t))
    assert times == [0.0, 0.03, 0.071, 0.1]
    assert tc.t == pytest.approx(0.1, abs=1e-12)


def test_run_rejects_output_time_outside_span():
    grid = build_grid(a=0.2, N=8)
    field = DGField.uniform(grid, FP)
    with pytest.raises(ValueError, match="output time"):
        run(field, TimeController(t_end=0.1), output_times=[0.2])
    with pytest.raises(ValueError, match="output time"):
        run(field, TimeController(t_end=0.1), output_times=[-0.01])


def test_time_controller_validation():
    for cfl in (0.0, -0.1, 0.4, 1.0):
        with pytest.raises(ValueError, match="cfl"):
            TimeController(t_end=1.0, cfl=cfl)
    TimeController(t_end=1.0, cfl=1.0 / 3.0)  # boundary value is legal
    with pytest.raises(ValueError, match="t_end"):
        TimeController(t_end=-1.0)


def test_run_blowup_on_infinite_speed():
    grid = build_grid(a=0.2, N=8)
    field = DGField.uniform(grid, FP)
    field.coeffs[1, 0, 2, 2] = math.inf  # wave speed diverges, dt collapses
    with pytest.raises(BlowupError):
        run(field, TimeController(t_end=0.1))


def test_run_blowup_on_nan_density():
    grid = build_grid(a=0.2, N=8)
    field = DGField.uniform(grid, FP)
    field.coeffs[0, 0, 1, 1] = math.nan
    with pytest.raises(BlowupError):
        run(field, TimeController(t_end=0.1))


def test_run_is_deterministic_bit_for_bit():
    grid = build_grid(a=0.2, N=24)
    vp = VorticityParams(alpha=0.95, theta0=math.pi / 8.0, epsilon=0.04, case=2)
    results = []
    for _ in range(2):
        field = build_initial_state(grid, vp, FP)
        out = run(field.copy(), TimeController(t_end=0.02))
        results.append(out.coeffs)
    assert np.array_equal(results[0], results[1])


def _point_reflect(c):
    """Coefficients of the field composed with (x, y) -> (-x, -y)."""
    out = c[:, :, ::-1, ::-1].copy()
    sign_var = np.array([1.0, -1.0, -1.0])[:, None, None, None]
    sign_mode = np.array([1.0, -1.0, -1.0])[None, :, None, None]
    return out * sign_var * sign_mode


def test_run_preserves_point_symmetry():
    grid = build_grid(a=0.2, N=100)
    vp = VorticityParams(alpha=0.95, theta0=math.pi / 8.0, epsilon=0.02, case=1)
    field = build_initial_state(grid, vp, FP)
    sym = 0.5 * (field.coeffs + _point_reflect(field.coeffs))
    field = DGField(grid, FP, sym)
    assert float(np.max(np.abs(field.coeffs - _point_reflect(field.coeffs)))) == 0.0
    out = run(field, TimeController(t_end=0.1))
    defect = float(np.max(np.abs(out.coeffs - _point_reflect(out.coeffs))))
    assert defect <= 1e-8


# ---------------------------------------------------------------------------
# DGField plumbing


def test_field_shape_validation():
    grid = build_grid(a=0.2, N=4)
    with pytest.raises(ValueError, match="shape"):
        DGField(grid, FP, np.zeros((3, 3, 4, 5)))
    with pytest.raises(ValueError, match="density"):
        DGField.uniform(grid, FP, rho=0.0)


def test_field_evaluate_and_corner_min():
    grid = build_grid(a=0.2, N=2)
    c = np.zeros((3, 3, 2, 2))
    c[0, 0] = 1.0
    c[0, 1, 0, 0] = 0.25
    c[0, 2, 0, 0] = -0.5
    field = DGField(grid, FP, c)
    vals = field.evaluate(1.0, -1.0)
    assert vals[0, 0, 0] == pytest.approx(1.0 + 0.25 + 0.5)
    assert field.corner_min_density() == pytest.approx(0.25)
    assert np.array_equal(field.cell_averages, c[:, 0])
