import math

import numpy as np
import pytest

from bloodfv import (Grid, VesselModel, celerity, dalembert_solution,
                     damped_discharge, damped_dispersion,
                     diffusion_limit_coefficient, eigenvalues, pressure_potential,
                     solve_tourniquet, tourniquet_profile, transmission_reflection)
from bloodfv.model import State

RHO = 1060.0


def model(k, cf=0.0, r0=4e-3):
    return VesselModel.from_rest_radius(Grid.of_length(2, 0.1), r0, k=k,
                                        rho=RHO, cf=cf)


M7 = model(1e7)
A_L = math.pi * 5e-3 ** 2
A_R = math.pi * 4e-3 ** 2


def test_tourniquet_solution_paper_values():
    sol = solve_tourniquet(A_L, A_R, M7)
    assert sol.c_l == pytest.approx(4.86, rel=2e-3)
    assert sol.c_r == pytest.approx(4.34, rel=2e-3)
    # frozen from an independent bisection over the residual system
    assert sol.a_m == pytest.approx(6.319991111748639e-05, rel=1e-10)
    assert sol.u_m == pytest.approx(1.027162493944612, rel=1e-10)
    assert sol.s == pytest.approx(5.018898014492251, rel=1e-10)


def test_tourniquet_residuals():
    sol = solve_tourniquet(A_L, A_R, M7)
    assert A_R < sol.a_m < A_L
    assert sol.u_m > 0.0
    assert sol.s > sol.u_m
    # rarefaction invariant
    assert abs(sol.u_m + 4 * sol.c_m - 4 * sol.c_l) <= 1e-12 * 4 * sol.c_l
    # mass jump
    assert sol.q_m == pytest.approx(sol.s * (sol.a_m - A_R), rel=1e-12)
    # momentum Rankine-Hugoniot
    lhs = (sol.q_m ** 2 / sol.a_m + pressure_potential(sol.a_m, M7)
           - pressure_potential(A_R, M7))
    assert lhs == pytest.approx(sol.s * sol.q_m, rel=1e-12)


def test_tourniquet_shock_admissibility():
    sol = solve_tourniquet(A_L, A_R, M7)
    _, lam2_m = eigenvalues(State(sol.a_m, sol.q_m), M7)
    _, lam2_r = eigenvalues(State(A_R, 0.0), M7)
    assert lam2_m > sol.s > lam2_r


def test_tourniquet_degenerate_equal_states():
    sol = solve_tourniquet(A_L, A_L, M7)
    assert sol.u_m == 0.0 and sol.a_m == A_L and sol.s == 0.0


def test_tourniquet_profile_far_field_and_edges():
    sol = solve_tourniquet(A_L, A_R, M7)
    t = 0.004
    s = tourniquet_profile(np.array([-1.0, 1.0]), t, sol)
    assert s.A[0] == A_L and s.Q[0] == 0.0
    assert s.A[1] == A_R and s.Q[1] == 0.0
    # fan formulas meet the adjacent constant states at the edges
    for xi, a_ref, u_ref in ((-sol.c_l, A_L, 0.0),
                             (4 * sol.c_l - 5 * sol.c_m, sol.a_m, sol.u_m)):
        u_fan = 0.8 * (xi + sol.c_l)
        c_fan = 0.2 * (-xi + 4 * sol.c_l)
        a_fan = A_L * (c_fan / sol.c_l) ** 4
        assert a_fan == pytest.approx(a_ref, rel=1e-12)
        assert u_fan == pytest.approx(u_ref, rel=1e-12, abs=1e-12)


def test_tourniquet_profile_matches_fine_simulation():
    # intermediate plateau from a fine HLL run agrees with the solver
    from bloodfv import presets
    from bloodfv.driver import run
    sc = presets.tourniquet(cells=3200)
    sol = solve_tourniquet(A_L, A_R, sc.model)
    res = run(sc)
    t, A, Q = res.final()
    x = sc.grid.cell_centers()
    mid = (x > 0.25 * sol.s * t) & (x < 0.75 * sol.s * t)
    assert np.median(A[mid]) == pytest.approx(sol.a_m, rel=1e-4)
    assert np.median(Q[mid] / A[mid]) == pytest.approx(sol.u_m, rel=1e-4)


def test_dalembert_initial_condition():
    m = model(1e8)
    r0 = 4e-3

    def phi(x):
        return np.where(np.abs(x) < 1.0, np.cos(0.5 * math.pi * x) ** 2, 0.0)

    eps = 5e-3
    x = np.linspace(-2, 2, 41)
    s = dalembert_solution(x, 0.0, phi, eps, m, r0)
    r = np.sqrt(s.A / math.pi)
    assert np.allclose(r, r0 + eps * phi(x), rtol=1e-14)
    assert np.allclose(s.Q, 0.0, atol=1e-300)
    srest = dalembert_solution(x, 0.37, lambda y: np.zeros_like(y), eps, m, r0)
    assert np.allclose(srest.A, math.pi * r0 ** 2, rtol=1e-15)


def test_dalembert_split_halves():
    m = model(1e8)
    r0 = 4e-3
    c0 = float(celerity(math.pi * r0 * r0, m))

    def phi(x):
        return np.where(np.abs(x) < 0.01, 1e-3 * np.cos(50 * math.pi * x) ** 2, 0.0)

    t = 5e-3
    eps = 1e-2
    xr = c0 * t  # centre of the right-moving half
    s = dalembert_solution(np.array([xr]), t, phi, eps, m, r0)
    r = math.sqrt(s.A[0] / math.pi)
    assert r - r0 == pytest.approx(0.5 * eps * phi(np.array([0.0]))[0], rel=1e-10)
    # right-moving component carries u = 2 c0 R1 / R0
    u = s.Q[0] / s.A[0]
    assert u == pytest.approx(2 * c0 * (r - r0) / r0, rel=1e-6)


def test_transmission_reflection_uniform():
    m = model(1e8)
    tr, re = transmission_reflection(A_R, A_R, m)
    assert tr == 1.0 and re == 0.0


def test_transmission_reflection_values():
    m = model(1e8)
    tr, re = transmission_reflection(A_L, A_R, m)
    assert tr == pytest.approx(1.165812488524866, rel=1e-12)
    assert re == pytest.approx(0.16581248852486602, rel=1e-12)
    assert tr == 1.0 + re  # exact by construction
    y_l = A_L / (RHO * float(celerity(A_L, m)))
    y_r = A_R / (RHO * float(celerity(A_R, m)))
    # complementary admittance identity (the transmitted-discharge weight)
    assert 1.0 - re == pytest.approx(2 * y_r / (y_l + y_r), rel=1e-13)
    assert tr - re == pytest.approx(1.0, rel=1e-15)


def test_transmission_reflection_swap_antisymmetry():
    m = model(1e8)
    _, re = transmission_reflection(A_L, A_R, m)
    tr2, re2 = transmission_reflection(A_R, A_L, m)
    assert re2 == -re
    assert tr2 == 1.0 + re2


def test_dispersion_frictionless_limit():
    m = model(1e8, cf=0.0)
    omega = 2 * math.pi / 0.5
    root = damped_dispersion(omega, m, 4e-3)
    c0 = float(celerity(math.pi * 16e-6, m))
    assert root.k_r == pytest.approx(omega / c0, rel=1e-14)
    assert root.k_i == 0.0


def test_dispersion_residual():
    omega = 2 * math.pi / 0.5
    r0 = 4e-3
    for cf in (0.000022, 0.000202, 0.005053, 0.5):
        m = model(1e8, cf=cf)
        root = damped_dispersion(omega, m, r0)
        assert root.k_i <= 0.0
        c0 = float(celerity(math.pi * r0 * r0, m))
        target = complex(omega ** 2 / c0 ** 2,
                         -omega * cf / (math.pi * r0 ** 2 * c0 ** 2))
        k2 = complex(root.k_r, root.k_i) ** 2
        assert abs(k2 - target) <= 1e-12 * abs(target)


def test_dispersion_root_frozen_value():
    m = model(1e8, cf=0.000202)
    root = damped_dispersion(2 * math.pi / 0.5, m, 4e-3)
    assert root.k_r == pytest.approx(0.9261856979094815, rel=1e-12)
    assert root.k_i == pytest.approx(-0.14449046265998272, rel=1e-12)


def test_diffusion_limit_phase_speed():
    # at strong friction the phase speed approaches sqrt(2 D omega)
    omega = 2 * math.pi / 0.5
    r0 = 4e-3
    m = model(1e8, cf=0.5)
    root = damped_dispersion(omega, m, r0)
    d = diffusion_limit_coefficient(m, r0)
    assert omega / root.k_r == pytest.approx(math.sqrt(2 * d * omega), rel=1e-2)


def test_damped_discharge_cases():
    omega = 2 * math.pi / 0.5
    m = model(1e8, cf=0.000202)
    root = damped_dispersion(omega, m, 4e-3)
    q_amp = 3.45e-7
    t = 1.3
    assert damped_discharge(0.0, t, omega, q_amp, root) == pytest.approx(
        q_amp * math.sin(omega * t), rel=1e-14)
    # ahead of the front the vessel is still at rest
    x_front = omega * t / root.k_r
    assert damped_discharge(x_front * 1.01, t, omega, q_amp, root) == 0.0
    # no damping without friction
    m0 = model(1e8, cf=0.0)
    root0 = damped_dispersion(omega, m0, 4e-3)
    q = damped_discharge(np.array([0.5, 1.0]), t, omega, q_amp, root0)
    assert np.allclose(np.abs(q), np.abs(q_amp * np.sin(omega * t - root0.k_r
                                                        * np.array([0.5, 1.0]))),
                       rtol=1e-14)
