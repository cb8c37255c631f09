"""Named built-in scenarios with the validation campaign's exact values.

tourniquet      Riemann problem (dam-break analogue), k = 1e7, R 5mm -> 4mm
wave            small sine radius pulse in a straight vessel, k = 1e8
dead-man        aneurism-shaped vessel at rest (well-balance demonstration)
expansion-to    pulse travelling from the 4 mm side into the 5 mm side
expansion-from  pulse travelling from the 5 mm side into the 4 mm side
aneurism        pulse started at the centre of a bulged section
damping-a-inf / damping-a15 / damping-a5 / damping-a1
                inflow-driven damped discharge wave at Womersley numbers
                inf / 15.15 / 5 / 1 (Cf = 0, 2.2e-5, 2.02e-4, 5.053e-3)
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Optional

import numpy as np

from .boundary import GivenDischarge
from .driver import Oracle, Scenario
from .fluxes import FluxKind
from .model import Grid, State, VesselModel
from .oracles import (damped_discharge, damped_dispersion, dalembert_solution,
                      solve_tourniquet, tourniquet_profile)
from .stepping import SchemeOrder
from .wellbalanced import FrictionTreatment

RHO = 1060.0


def _rest_initial(model: VesselModel):
    def init(x):
        return State(model.a0.copy(), np.zeros_like(x))
    return init


def tourniquet(cells: int = 100) -> Scenario:
    k = 1e7
    r_l, r_r = 5e-3, 4e-3
    grid = Grid.of_length(cells, 0.08, x_left=-0.04)
    model = VesselModel.from_rest_radius(grid, r_r, k=k, rho=RHO)
    a_l, a_r = math.pi * r_l * r_l, math.pi * r_r * r_r

    def init(x):
        A = np.where(x <= 0.0, a_l, a_r)
        return State(A, np.zeros_like(A))

    return Scenario(grid=grid, model=model, initial=init,
                    flux=FluxKind.HLL, order=SchemeOrder(1), cfl=1.0,
                    friction=FrictionTreatment.NONE,
                    t_end=0.005, snapshot_times=(0.005,), name="tourniquet")


def wave(cells: int = 200, t_end: float = 0.008) -> Scenario:
    k = 1e8
    r0 = 4e-3
    length = 0.16
    eps = 5e-3
    grid = Grid.of_length(cells, length)
    model = VesselModel.from_rest_radius(grid, r0, k=k, rho=RHO)

    def bump(x):
        inside = (x > 0.4 * length) & (x < 0.6 * length)
        return np.where(inside, np.sin(math.pi * (x - 0.4 * length) / (0.2 * length)), 0.0)

    def init(x):
        r = r0 * (1.0 + eps * bump(x))
        A = math.pi * r * r
        return State(A, np.zeros_like(A))

    snaps = tuple(f * t_end for f in (0.0, 0.25, 0.5, 0.75, 1.0))
    return Scenario(grid=grid, model=model, initial=init,
                    flux=FluxKind.HLL, order=SchemeOrder(1),
                    friction=FrictionTreatment.NONE,
                    t_end=t_end, snapshot_times=snaps, name="wave")


def wave_pulse_shape(x):
    """phi(x) of the wave preset: R = R0 + eps*phi, a half-sine of height R0."""
    length, r0 = 0.16, 4e-3
    inside = (x > 0.4 * length) & (x < 0.6 * length)
    return np.where(inside, r0 * np.sin(math.pi * (x - 0.4 * length) / (0.2 * length)), 0.0)


def dead_man_radius(x):
    """Aneurism rest radius of the dead-man case (vectorized)."""
    ro, dr = 4e-3, 1e-3
    x1, x2, x3, x4 = 1.0e-2, 3.05e-2, 4.95e-2, 7.0e-2
    x = np.asarray(x, dtype=float)
    up = ro + 0.5 * dr * (np.sin(math.pi * (x - x1) / (x2 - x1) - 0.5 * math.pi) + 1.0)
    down = ro + 0.5 * dr * (np.cos(math.pi * (x - x3) / (x4 - x3)) + 1.0)
    r = np.where(x <= x1, ro,
                 np.where(x < x2, up,
                          np.where(x <= x3, ro + dr,
                                   np.where(x < x4, down, ro))))
    return r


def dead_man(cells: int = 50, t_end: float = 5.0) -> Scenario:
    grid = Grid.of_length(cells, 0.14)
    model = VesselModel.from_rest_radius(grid, lambda x: float(dead_man_radius(x)),
                                         k=1e8, rho=RHO)
    return Scenario(grid=grid, model=model, initial=_rest_initial(model),
                    flux=FluxKind.HLL, order=SchemeOrder(1),
                    friction=FrictionTreatment.NONE,
                    t_end=t_end, snapshot_times=(t_end,), name="dead-man")


def _expansion_radius(length):
    r_r, dr = 4e-3, 1e-3
    x1, x2 = 19.0 * length / 40.0, length / 2.0

    def r0(x):
        x = np.asarray(x, dtype=float)
        ramp = r_r + 0.5 * dr * (1.0 + np.cos(math.pi * (x - x1) / (x2 - x1)))
        return np.where(x <= x1, r_r + dr, np.where(x <= x2, ramp, r_r))

    return r0


def _pulse_scenario(cells, window_lo, window_hi, name) -> Scenario:
    k = 1e8
    length = 0.16
    eps = 5e-3
    t_end = 8e-3
    grid = Grid.of_length(cells, length)
    r0 = _expansion_radius(length)
    model = VesselModel.from_rest_radius(grid, lambda x: float(r0(x)), k=k, rho=RHO)

    def init(x):
        base = r0(x)
        inside = (x >= window_lo * length) & (x <= window_hi * length)
        s = np.sin(5.0 * math.pi * (x - window_lo * length) / length)
        r = base * np.where(inside, 1.0 + eps * s, 1.0)
        A = math.pi * r * r
        return State(A, np.zeros_like(A))

    snaps = tuple(f * t_end for f in (0.0, 0.25, 0.5, 0.75, 1.0))
    return Scenario(grid=grid, model=model, initial=init,
                    flux=FluxKind.HLL, order=SchemeOrder(2),
                    friction=FrictionTreatment.NONE,
                    t_end=t_end, snapshot_times=snaps, name=name)


def expansion_to(cells: int = 1500) -> Scenario:
    """Pulse in the 4 mm section travelling (leftwards) into the 5 mm section."""
    return _pulse_scenario(cells, 0.65, 0.85, "expansion-to")


def expansion_from(cells: int = 1500) -> Scenario:
    """Pulse in the 5 mm section travelling (rightwards) into the 4 mm section."""
    return _pulse_scenario(cells, 0.15, 0.35, "expansion-from")


def aneurism(cells: int = 1500) -> Scenario:
    k = 1e8
    length = 0.16
    r_b, dr = 4e-3, 1e-3
    eps = 5e-3
    t_end = 8e-3
    x1, x2, x3, x4 = (9.0 * length / 40.0, length / 4.0,
                      3.0 * length / 4.0, 31.0 * length / 40.0)
    grid = Grid.of_length(cells, length)

    def r0(x):
        x = np.asarray(x, dtype=float)
        up = r_b + 0.5 * dr * (1.0 - np.cos(math.pi * (x - x1) / (x2 - x1)))
        down = r_b + 0.5 * dr * (1.0 + np.cos(math.pi * (x - x3) / (x4 - x3)))
        return np.where(x <= x1, r_b,
                        np.where(x <= x2, up,
                                 np.where(x <= x3, r_b + dr,
                                          np.where(x < x4, down, r_b))))

    model = VesselModel.from_rest_radius(grid, lambda x: float(r0(x)), k=k, rho=RHO)

    def init(x):
        base = r0(x)
        inside = (x >= 0.45 * length) & (x <= 0.55 * length)
        s = np.sin(10.0 * math.pi * (x - 0.45 * length) / length)
        r = base * np.where(inside, 1.0 + eps * s, 1.0)
        A = math.pi * r * r
        return State(A, np.zeros_like(A))

    snaps = tuple(f * t_end for f in (0.0, 0.25, 0.5, 0.75, 1.0))
    return Scenario(grid=grid, model=model, initial=init,
                    flux=FluxKind.HLL, order=SchemeOrder(2),
                    friction=FrictionTreatment.NONE,
                    t_end=t_end, snapshot_times=snaps, name="aneurism")


DAMPING_CF = {"damping-a-inf": 0.0, "damping-a15": 0.000022,
              "damping-a5": 0.000202, "damping-a1": 0.005053}
DAMPING_OMEGA = 2.0 * math.pi / 0.5
DAMPING_QAMP = 3.45e-7
DAMPING_R0 = 4e-3
DAMPING_LENGTH = 3.0


def damping(cf: float, cells: int = 50, t_end: float = 25.0,
            name: str = "damping") -> Scenario:
    grid = Grid.of_length(cells, DAMPING_LENGTH)
    model = VesselModel.from_rest_radius(grid, DAMPING_R0, k=1e8, rho=RHO, cf=cf)
    root = damped_dispersion(DAMPING_OMEGA, model, DAMPING_R0)

    def q_in(t):
        return DAMPING_QAMP * math.sin(DAMPING_OMEGA * t)

    def q_out(t, _kr=root.k_r, _ki=root.k_i):
        # scalar form of damped_discharge(L, t) for the per-step hot path
        if _kr * DAMPING_LENGTH > DAMPING_OMEGA * t:
            return 0.0
        return (DAMPING_QAMP * math.sin(DAMPING_OMEGA * t - _kr * DAMPING_LENGTH)
                * math.exp(_ki * DAMPING_LENGTH))

    friction = (FrictionTreatment.SEMI_IMPLICIT if cf > 0.0
                else FrictionTreatment.NONE)
    return Scenario(grid=grid, model=model, initial=_rest_initial(model),
                    boundaries=(GivenDischarge(q_in), GivenDischarge(q_out)),
                    flux=FluxKind.HLL, order=SchemeOrder(1), friction=friction,
                    t_end=t_end, snapshot_times=(t_end,), name=name)


def _damping_builder(name):
    def build(cells=50):
        return damping(DAMPING_CF[name], cells=cells, name=name)
    return build


PRESETS: Dict[str, Callable[..., Scenario]] = {
    "tourniquet": tourniquet,
    "wave": wave,
    "dead-man": dead_man,
    "expansion-to": expansion_to,
    "expansion-from": expansion_from,
    "aneurism": aneurism,
    **{name: _damping_builder(name) for name in DAMPING_CF},
}


def build(name: str, cells: Optional[int] = None) -> Scenario:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    return builder() if cells is None else builder(cells=cells)


def preset_oracle(sc: Scenario) -> Optional[Oracle]:
    """Analytic (x, t) -> State oracle for presets that have one."""
    if sc.name == "tourniquet":
        a_l = math.pi * (5e-3) ** 2
        a_r = math.pi * (4e-3) ** 2
        sol = solve_tourniquet(a_l, a_r, sc.model)
        return lambda x, t: tourniquet_profile(x, t, sol)
    if sc.name == "wave":
        return lambda x, t: dalembert_solution(x, t, wave_pulse_shape, 5e-3,
                                               sc.model, 4e-3)
    if sc.name.startswith("damping"):
        root = damped_dispersion(DAMPING_OMEGA, sc.model, DAMPING_R0)
        a0 = math.pi * DAMPING_R0 * DAMPING_R0

        def oracle(x, t):
            # linear oracle for the discharge; A is the rest section
            # (zeroth order), valid for Q/u comparisons only
            q = damped_discharge(x, t, DAMPING_OMEGA, DAMPING_QAMP, root)
            return State(np.full(np.shape(q), a0), q)

        return oracle
    return None
