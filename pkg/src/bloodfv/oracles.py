"""Closed-form and semi-analytical reference solutions.

Ideal tourniquet (the dam-break analogue): left/right rest states joined by
a rarefaction fan and a shock; the intermediate state solves the invariant
and Rankine-Hugoniot system iteratively.  Linear oracles: d'Alembert split
of a radius pulse, admittance transmission/reflection at a section change,
and the damped progressive wave of the friction test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import ConvergenceError
from .model import State, VesselModel, celerity, pressure_potential


@dataclass(frozen=True)
class TourniquetSolution:
    a_m: float     # intermediate area (m^2)
    u_m: float     # intermediate velocity (m/s)
    q_m: float     # intermediate discharge (m^3/s)
    s: float       # shock speed (m/s)
    c_l: float
    c_m: float
    c_r: float
    a_l: float
    a_r: float


def solve_tourniquet(a_l: float, a_r: float, m: VesselModel,
                     rel_tol: float = 1e-14, max_iter: int = 200) -> TourniquetSolution:
    """Intermediate state of the tourniquet Riemann problem (A_L > A_R, rest).

    Bisection on A_M in (A_R, A_L): robustness over speed for an oracle.
    The residual is the Rankine-Hugoniot momentum relation with u_M and s
    eliminated through the rarefaction invariant and mass jump.
    """
    if not a_l > a_r > 0.0:
        if a_l == a_r:
            c = float(celerity(a_l, m))
            return TourniquetSolution(a_l, 0.0, 0.0, 0.0, c, c, c, a_l, a_r)
        raise ValueError(f"tourniquet needs A_L > A_R > 0, got {a_l!r}, {a_r!r}")
    c_l = float(celerity(a_l, m))
    c_r = float(celerity(a_r, m))

    def residual(a_mid):
        c_mid = float(celerity(a_mid, m))
        u_mid = 4.0 * (c_l - c_mid)
        q_mid = a_mid * u_mid
        s = q_mid / (a_mid - a_r)
        return (q_mid * q_mid / a_mid + pressure_potential(a_mid, m)
                - pressure_potential(a_r, m) - s * q_mid)

    lo, hi = a_r, a_l  # residual -inf near A_R, positive near A_L
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rel_tol * mid:
            break
    else:
        raise ConvergenceError("tourniquet bisection did not converge")
    a_m = 0.5 * (lo + hi)
    c_m = float(celerity(a_m, m))
    u_m = 4.0 * (c_l - c_m)
    q_m = a_m * u_m
    s = q_m / (a_m - a_r)
    return TourniquetSolution(a_m, u_m, q_m, s, c_l, c_m, c_r, a_l, a_r)


def tourniquet_profile(x, t: float, sol: TourniquetSolution) -> State:
    """Piecewise exact solution at time t: left state, fan, plateau, right state."""
    x = np.asarray(x, dtype=float)
    if t <= 0.0:
        A = np.where(x <= 0.0, sol.a_l, sol.a_r)
        return State(A, np.zeros_like(A))
    xi = x / t
    # rarefaction fan between x_A = -c_L t and x_B = (4c_L - 5c_M) t
    u_fan = 0.8 * (xi + sol.c_l)
    c_fan = 0.2 * (-xi + 4.0 * sol.c_l)
    a_fan = _area_from_celerity(c_fan, sol)
    A = np.where(xi <= -sol.c_l, sol.a_l,
                 np.where(xi <= 4.0 * sol.c_l - 5.0 * sol.c_m, a_fan,
                          np.where(xi <= sol.s, sol.a_m, sol.a_r)))
    u = np.where(xi <= -sol.c_l, 0.0,
                 np.where(xi <= 4.0 * sol.c_l - 5.0 * sol.c_m, u_fan,
                          np.where(xi <= sol.s, sol.u_m, 0.0)))
    return State(A, A * u)


def _area_from_celerity(c, sol: TourniquetSolution):
    # invert c^2 = k sqrt(A)/(2 rho sqrt(pi)) through the known left state
    ratio = c / sol.c_l
    return sol.a_l * ratio * ratio * ratio * ratio


def dalembert_solution(x, t: float, phi: Callable, eps: float, m: VesselModel,
                       r0: float) -> State:
    """Linearized two-wave split of an initial radius perturbation eps*phi(x)."""
    x = np.asarray(x, dtype=float)
    c0 = float(celerity(math.pi * r0 * r0, m))
    pm = phi(x - c0 * t)
    pp = phi(x + c0 * t)
    r = r0 + 0.5 * eps * (pm + pp)
    # velocity split carries the full eps*c0/R0 weight: each travelling
    # component satisfies u1 = +/- 2*c0*R1/R0 with R1 = (eps/2)*phi
    u = -eps * (c0 / r0) * (-pm + pp)
    A = math.pi * r * r
    return State(A, A * u)


class TransmissionReflection(NamedTuple):
    tr: float
    re: float


def characteristic_admittance(a0: float, m: VesselModel) -> float:
    """Y = A0/(rho c0), the discharge carried per unit pressure by a plane wave."""
    return a0 / (m.rho * float(celerity(a0, m)))


def transmission_reflection(a_left: float, a_right: float, m: VesselModel) -> TransmissionReflection:
    """Pressure/radius transmission and reflection coefficients at a section jump.

    The incident wave travels in the `a_left` medium.  Tr is computed as
    1 + Re so the identity holds exactly.
    """
    y_l = characteristic_admittance(a_left, m)
    y_r = characteristic_admittance(a_right, m)
    re = (y_l - y_r) / (y_l + y_r)
    return TransmissionReflection(1.0 + re, re)


class DispersionRoot(NamedTuple):
    k_r: float  # real wavenumber (1/m)
    k_i: float  # imaginary part (<= 0: decay in +x)


def damped_dispersion(omega: float, m: VesselModel, r0: float) -> DispersionRoot:
    """Root of K^2 = omega^2/c0^2 - i*omega*Cf/(pi R0^2 c0^2), modulus-argument form."""
    c0 = float(celerity(math.pi * r0 * r0, m))
    mod = (omega ** 4 / c0 ** 4
           + (omega * m.cf / (math.pi * r0 * r0 * c0 * c0)) ** 2) ** 0.25
    arg = 0.5 * math.atan(-m.cf / (math.pi * r0 * r0 * omega))
    return DispersionRoot(mod * math.cos(arg), mod * math.sin(arg))


def damped_discharge(x, t: float, omega: float, q_amp: float, root: DispersionRoot):
    """Damped progressive discharge wave behind the front k_r x <= omega t."""
    x = np.asarray(x, dtype=float)
    q = q_amp * np.sin(omega * t - root.k_r * x) * np.exp(root.k_i * x)
    return np.where(root.k_r * x > omega * t, 0.0, q)


def diffusion_limit_coefficient(m: VesselModel, r0: float) -> float:
    """Large-friction diffusivity D = k pi R0^3 / (2 rho Cf) of the radius equation."""
    return m.k * math.pi * r0 ** 3 / (2.0 * m.rho * m.cf)
