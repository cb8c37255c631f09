"""Time integration: CFL control, first-order step, Heun second-order step."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from ._backend import kernels
from ._kernels_py import step_naive_first as _step_naive
from .errors import BloodFVError
from .fluxes import FLUX_ID, FluxKind
from .model import State, VesselModel
from .reconstruction import SLOPE_ID, MUSCL, SlopeKind
from .wellbalanced import FrictionTreatment, SourceTreatment, apparent_topography

DEFAULT_CFL = {1: 1.0, 2: 0.5}


@dataclass(frozen=True)
class SchemeOrder:
    """First- or second-order scheme; second order carries its slope operator."""

    order: int = 1
    slope: SlopeKind = MUSCL

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {self.order}")


class StepReport(NamedTuple):
    dt_used: float
    max_wavespeed: float
    cfl_number: float


GhostFn = Callable[[np.ndarray, np.ndarray, float], Tuple[State, State]]


def _zero_gradient_ghosts(A, Q, t):
    return State(A[0], Q[0]), State(A[-1], Q[-1])


def cfl_timestep(A, Q, m: VesselModel, dx: float, order: SchemeOrder,
                 flux: FluxKind, n_cfl: Optional[float] = None) -> float:
    """dt = n_cfl * dx / max(|u| + c); the kinetic flux uses sqrt(3T) for c."""
    if n_cfl is None:
        n_cfl = DEFAULT_CFL[order.order]
    speed = kernels.max_wavespeed(np.asarray(A, dtype=float), np.asarray(Q, dtype=float),
                                  m.k, m.rho, 1 if flux is FluxKind.KINETIC else 0)
    if not speed > 0.0:
        raise BloodFVError("degenerate CFL: maximum wave speed is zero")
    return n_cfl * dx / speed


def _pad(A, Q, m, ghost_left, ghost_right, sqrt_a0=None):
    n = A.shape[0]
    Ae = np.empty(n + 2)
    Qe = np.empty(n + 2)
    sa0e = np.empty(n + 2)
    Ae[1:-1] = A
    Qe[1:-1] = Q
    sa0 = m.sqrt_a0 if sqrt_a0 is None else sqrt_a0
    sa0e[1:-1] = sa0
    Ae[0], Qe[0] = ghost_left
    Ae[-1], Qe[-1] = ghost_right
    sa0e[0] = sa0[0]
    sa0e[-1] = sa0[-1]
    return Ae, Qe, sa0e


def _apply_semi_implicit(A, Q, m, dt):
    u = Q / A
    return A * (u / (1.0 + m.cf * dt / A))


def step_first_order(A, Q, m: VesselModel, dx: float, dt: float, flux: FluxKind,
                     source: SourceTreatment = SourceTreatment.HYDROSTATIC,
                     friction: FrictionTreatment = FrictionTreatment.NONE,
                     ghost_left: Optional[State] = None,
                     ghost_right: Optional[State] = None):
    """One first-order step; ghosts default to zero-gradient copies."""
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if ghost_left is None:
        ghost_left = State(A[0], Q[0])
    if ghost_right is None:
        ghost_right = State(A[-1], Q[-1])
    sa0 = None
    if friction is FrictionTreatment.APPARENT_TOPOGRAPHY:
        sa0 = apparent_topography(A, Q, m, dx)
    Ae, Qe, sa0e = _pad(A, Q, m, ghost_left, ghost_right, sa0)
    if source is SourceTreatment.HYDROSTATIC:
        A1, Q1 = kernels.step_hydro_first(Ae, Qe, sa0e, dt / dx, m.k, m.rho,
                                          FLUX_ID[flux])
    else:
        a0e = np.empty_like(Ae)
        a0e[1:-1] = m.a0
        a0e[0] = m.a0[0]
        a0e[-1] = m.a0[-1]
        A1, Q1 = _step_naive(Ae, Qe, sa0e, a0e, dt, dx, m.k, m.rho, FLUX_ID[flux])
    if friction is FrictionTreatment.SEMI_IMPLICIT:
        Q1 = _apply_semi_implicit(A1, Q1, m, dt)
    return A1, Q1


def _phi(A, Q, m, dx, flux, slope: SlopeKind, friction, ghosts):
    sa0 = None
    if friction is FrictionTreatment.APPARENT_TOPOGRAPHY:
        sa0 = apparent_topography(A, Q, m, dx)
    Ae, Qe, sa0e = _pad(A, Q, m, ghosts[0], ghosts[1], sa0)
    return kernels.phi_second(Ae, Qe, sa0e, dx, m.k, m.rho, FLUX_ID[flux],
                              SLOPE_ID[slope.kind], slope.theta_eno, slope.theta_enom)


def step_second_order(A, Q, m: VesselModel, dx: float, dt: float, flux: FluxKind,
                      slope: SlopeKind = MUSCL,
                      friction: FrictionTreatment = FrictionTreatment.NONE,
                      ghost_fn: Optional[GhostFn] = None, t: float = 0.0):
    """One Heun (TVD-RK2) step of the second-order spatial operator.

    The semi-implicit friction correction is applied after each stage so a
    zero-velocity state stays exactly at rest stage-wise; ghost states are
    re-evaluated at each stage time.
    """
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if ghost_fn is None:
        ghost_fn = _zero_gradient_ghosts
    pa, pq = _phi(A, Q, m, dx, flux, slope, friction, ghost_fn(A, Q, t))
    A1 = A + dt * pa
    Q1 = Q + dt * pq
    if friction is FrictionTreatment.SEMI_IMPLICIT:
        Q1 = _apply_semi_implicit(A1, Q1, m, dt)
    pa, pq = _phi(A1, Q1, m, dx, flux, slope, friction, ghost_fn(A1, Q1, t + dt))
    A2 = A1 + dt * pa
    Q2 = Q1 + dt * pq
    if friction is FrictionTreatment.SEMI_IMPLICIT:
        Q2 = _apply_semi_implicit(A2, Q2, m, dt)
    return 0.5 * (A + A2), 0.5 * (Q + Q2)


def heun_combine(u0, u2):
    """Heun closing average (exposed for the linear-operator check)."""
    return 0.5 * (u0 + u2)
