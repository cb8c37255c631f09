"""Ghost-state generation by the method of characteristics.

Along dx/dt = u -/+ c the quantities u -/+ 4c are transported, so a
subcritical boundary needs exactly one prescribed datum; the other unknown
comes from the invariant carried out of the domain by the near cell.
Source terms are neglected in these relations.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, SupercriticalWarning
from .fluxes import FluxKind
from .model import SQRT_PI, State, VesselModel, celerity


def _cel(a: float, m: VesselModel) -> float:
    # scalar celerity on the hot per-step path (math.sqrt == np.sqrt on scalars)
    return math.sqrt(m.k * math.sqrt(a) / (2.0 * m.rho * SQRT_PI))


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def is_subcritical(s: State, m: VesselModel) -> bool:
    """(u - c)(u + c) < 0."""
    u = s.Q / s.A
    c = celerity(s.A, m)
    return bool((u - c) * (u + c) < 0.0)


def ghost_given_area(side: Side, a_bound: float, u_near: State, m: VesselModel) -> State:
    """Boundary state with prescribed cross-section (hence pressure)."""
    c_near = _cel(u_near.A, m)
    c_bound = _cel(a_bound, m)
    un = u_near.Q / u_near.A
    if side is Side.LEFT:
        ub = un - 4.0 * (c_near - c_bound)
    else:
        ub = un + 4.0 * (c_near - c_bound)
    if not (ub - c_bound) * (ub + c_bound) < 0.0:
        warnings.warn("prescribed area drives the boundary supercritical",
                      SupercriticalWarning, stacklevel=2)
    return State(a_bound, a_bound * ub)


def ghost_given_discharge(side: Side, q_bound: float, u_near: State, m: VesselModel,
                          rtol: float = 1e-12, max_iter: int = 100) -> State:
    """Boundary state with prescribed discharge.

    Solves 0 = -Q_b + (u_n -/+ 4c_n) A_b +/- 4 c(A_b) A_b for A_b with a
    safeguarded Newton iteration (bisection fallback on
    [A_near/100, 100 A_near]).
    """
    c_near = _cel(u_near.A, m)
    un = u_near.Q / u_near.A
    sgn = 1.0 if side is Side.LEFT else -1.0
    base = un - sgn * 4.0 * c_near

    def f(a):
        return -q_bound + base * a + sgn * 4.0 * _cel(a, m) * a

    def fprime(a):
        return base + sgn * 5.0 * _cel(a, m)

    lo, hi = u_near.A / 100.0, 100.0 * u_near.A
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return State(lo, q_bound)
    if fhi == 0.0:
        return State(hi, q_bound)
    if flo * fhi > 0.0:
        raise ConvergenceError(
            f"given-discharge boundary has no root in [{lo:g}, {hi:g}] "
            f"(Q_bound = {q_bound:g}, side = {side.value})")
    increasing = flo < 0.0  # f decreases in A at the right boundary
    a = u_near.A
    tol_res = rtol * max(1.0, abs(q_bound))
    for _ in range(max_iter):
        fa = f(a)
        if abs(fa) <= tol_res:
            break
        if (fa < 0.0) == increasing:
            lo = a
        else:
            hi = a
        dfa = fprime(a)
        a_new = a - fa / dfa if dfa != 0.0 else 0.5 * (lo + hi)
        if not lo < a_new < hi:
            a_new = 0.5 * (lo + hi)
        a = a_new
    else:
        raise ConvergenceError(
            f"given-discharge boundary did not converge in {max_iter} iterations "
            f"(Q_bound = {q_bound:g}, residual = {f(a):g})")
    if a <= 0.0:
        raise ConvergenceError("given-discharge boundary produced a non-positive area")
    return State(a, q_bound)


def ghost_supercritical(side: Side, u_near: State, a_bound=None, q_bound=None) -> State:
    """Supercritical inflow imposes both values; outflow copies the near state."""
    if a_bound is not None and q_bound is not None:
        return State(a_bound, q_bound)
    return u_near


def _hll_mass_scalar(AL, QL, AR, QR, m: VesselModel) -> float:
    uL = QL / AL
    uR = QR / AR
    cL = _cel(AL, m)
    cR = _cel(AR, m)
    c1 = min(uL - cL, uR - cR)
    c2 = max(uL + cL, uR + cR)
    if 0.0 <= c1:
        return QL
    if c2 <= 0.0:
        return QR
    return (c2 * QL - c1 * QR) / (c2 - c1) + c1 * c2 / (c2 - c1) * (AR - AL)


def ghost_discharge_from_flux(side: Side, q_bound: float, u_near: State,
                              m: VesselModel, flux: FluxKind,
                              rtol: float = 1e-12, max_iter: int = 200) -> State:
    """Impose the discharge through the first numerical-flux component.

    Only the HLL flux is supported; the ghost area comes from the
    characteristic solve and the ghost velocity is adjusted (secant with a
    bisection safeguard) until the HLL mass flux at the boundary interface
    equals Q_bound.
    """
    if flux is not FluxKind.HLL:
        raise ValueError("flux-based discharge imposition is implemented for the HLL flux only")
    a_ghost = ghost_given_discharge(side, q_bound, u_near, m).A
    c_near = _cel(u_near.A, m)
    un = u_near.Q / u_near.A

    if side is Side.LEFT:
        def mass_flux(u_ghost):
            return _hll_mass_scalar(a_ghost, a_ghost * u_ghost,
                                    u_near.A, u_near.Q, m)
    else:
        def mass_flux(u_ghost):
            return _hll_mass_scalar(u_near.A, u_near.Q,
                                    a_ghost, a_ghost * u_ghost, m)

    lo = un - 8.0 * c_near
    hi = un + 8.0 * c_near
    if not mass_flux(lo) <= q_bound <= mass_flux(hi):
        raise ConvergenceError("flux-based discharge imposition: target outside bracket")
    tol = rtol * max(1.0, abs(q_bound))
    u0, u1 = q_bound / a_ghost, q_bound / a_ghost + 1e-3 * c_near
    f0, f1 = mass_flux(u0) - q_bound, mass_flux(u1) - q_bound
    for _ in range(max_iter):
        if abs(f1) <= tol:
            return State(a_ghost, a_ghost * u1)
        if f1 < 0.0:
            lo = max(lo, u1)
        else:
            hi = min(hi, u1)
        du = f1 * (u1 - u0) / (f1 - f0) if f1 != f0 else 0.0
        u_next = u1 - du
        if not lo < u_next < hi or du == 0.0:
            u_next = 0.5 * (lo + hi)
        u0, f0 = u1, f1
        u1 = u_next
        f1 = mass_flux(u1) - q_bound
    raise ConvergenceError("flux-based discharge imposition did not converge")


# ---------------------------------------------------------------------------
# boundary condition specs used by scenarios

@dataclass(frozen=True)
class NonReflecting:
    """Zero-gradient copy of the near state."""

    def ghost(self, side: Side, t: float, near: State, m: VesselModel) -> State:
        return near


@dataclass(frozen=True)
class GivenArea:
    a_of_t: Callable[[float], float]

    def ghost(self, side: Side, t: float, near: State, m: VesselModel) -> State:
        return ghost_given_area(side, self.a_of_t(t), near, m)


@dataclass(frozen=True)
class GivenDischarge:
    q_of_t: Callable[[float], float]

    def ghost(self, side: Side, t: float, near: State, m: VesselModel) -> State:
        return ghost_given_discharge(side, self.q_of_t(t), near, m)


@dataclass(frozen=True)
class GivenDischargeFlux:
    """Discharge imposed through the HLL mass flux instead of the invariant."""

    q_of_t: Callable[[float], float]
    flux: FluxKind = FluxKind.HLL

    def ghost(self, side: Side, t: float, near: State, m: VesselModel) -> State:
        return ghost_discharge_from_flux(side, self.q_of_t(t), near, m, self.flux)


@dataclass(frozen=True)
class SupercriticalInflow:
    a_of_t: Callable[[float], float]
    q_of_t: Callable[[float], float]

    def ghost(self, side: Side, t: float, near: State, m: VesselModel) -> State:
        return State(self.a_of_t(t), self.q_of_t(t))


@dataclass(frozen=True)
class SupercriticalOutflow:
    def ghost(self, side: Side, t: float, near: State, m: VesselModel) -> State:
        return near


def load_timeseries(path) -> Callable[[float], float]:
    """Two-column time/value file (s, SI), linearly interpolated and clamped."""
    data = np.loadtxt(path, delimiter=None, comments="#", ndmin=2)
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError(f"timeseries file {path} must have two columns")
    times, values = data[:, 0], data[:, 1]
    if not np.all(np.diff(times) > 0):
        raise ValueError(f"timeseries file {path} must have strictly increasing times")

    def interp(t: float) -> float:
        return float(np.interp(t, times, values))

    return interp
