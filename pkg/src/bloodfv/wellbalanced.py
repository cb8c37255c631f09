"""Source-term machinery around the varying rest section.

The rest-section gradient enters the momentum equation as
(k*A/(rho*sqrt(pi))) * d/dx sqrt(A0).  Treating it naively (explicit cell
derivative) breaks the Q = 0 equilibrium over a non-uniform vessel; the
hydrostatic-style reconstruction of sqrt(A) preserves it exactly.  Friction
is handled either semi-implicitly after the convective update or by folding
it into an apparent rest-section slope.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .errors import ZeroAreaError
from .model import SQRT_PI, State, VesselModel, pressure_potential


class SourceTreatment(enum.Enum):
    NAIVE_EXPLICIT = "naive"
    HYDROSTATIC = "hydrostatic"


class FrictionTreatment(enum.Enum):
    NONE = "none"
    SEMI_IMPLICIT = "si"
    APPARENT_TOPOGRAPHY = "at"


class ReconstructedInterface(NamedTuple):
    UL_star: State
    UR_star: State
    sL: float  # momentum correction to the left cell's flux
    sR: float  # momentum correction to the right cell's flux


def reconstruct_interface_arrays(Ai, Qi, Aj, Qj, sa0_i, sa0_j):
    """Hydrostatic interface traces, vectorized.

    Returns (AL, QL, AR, QR).  When the interface sees no rest-section jump
    the raw cell states pass through untouched, so the scheme reduces
    bit-for-bit to the unmodified one; otherwise the traces are built in
    sqrt(A) space, which makes both sides bit-identical at rest.
    """
    dsa0 = sa0_j - sa0_i
    sL = np.maximum(np.sqrt(Ai) + np.minimum(dsa0, 0.0), 0.0)
    sR = np.maximum(np.sqrt(Aj) - np.maximum(dsa0, 0.0), 0.0)
    flat = dsa0 == 0.0
    AL = np.where(flat, Ai, sL * sL)
    AR = np.where(flat, Aj, sR * sR)
    QL = np.where(flat, Qi, AL * (Qi / Ai))
    QR = np.where(flat, Qj, AR * (Qj / Aj))
    return AL, QL, AR, QR


def hydrostatic_reconstruct(Ui: State, Ui1: State, sqrt_a0_i: float,
                            sqrt_a0_i1: float, m: VesselModel) -> ReconstructedInterface:
    """Reconstructed interface pair with its momentum flux corrections."""
    AL, QL, AR, QR = reconstruct_interface_arrays(
        Ui.A, Ui.Q, Ui1.A, Ui1.Q, sqrt_a0_i, sqrt_a0_i1)
    sL = pressure_potential(Ui.A, m) - pressure_potential(AL, m)
    sR = pressure_potential(Ui1.A, m) - pressure_potential(AR, m)
    return ReconstructedInterface(State(float(AL), float(QL)),
                                  State(float(AR), float(QR)),
                                  float(sL), float(sR))


def naive_source(Ui: State, a0_left, a0_center, a0_right, m: VesselModel, dx: float):
    """Explicit momentum source rate using arithmetic-mean interface sections.

    This is the treatment that produces spurious flow over a varying vessel;
    it is kept for that demonstration.
    """
    a0_ip = 0.5 * (a0_right + a0_center)
    a0_im = 0.5 * (a0_center + a0_left)
    return (m.k * Ui.A) / (2.0 * m.rho * SQRT_PI * np.sqrt(a0_center)) * (a0_ip - a0_im) / dx


def semi_implicit_friction(U_star: State, m: VesselModel, dt: float) -> State:
    """Friction correction u <- u/(1 + Cf*dt/A); preserves u = 0 exactly."""
    if np.any(np.asarray(U_star.A) <= 0.0):
        raise ZeroAreaError("semi-implicit friction needs A > 0")
    u = U_star.Q / U_star.A
    u_new = u / (1.0 + m.cf * dt / U_star.A)
    return State(U_star.A, U_star.A * u_new)


def apparent_topography(A, Q, m: VesselModel, dx: float):
    """Rest-section slope corrected for friction: sqrt(A0_app) = sqrt(A0) + b.

    b integrates d/dx b = -(rho*sqrt(pi)*Cf/k) * Q/A^2 by a cellwise
    trapezoid from the left boundary with b = 0 there; only differences of b
    across interfaces enter the reconstruction, so the constant is
    immaterial.
    """
    A = np.asarray(A, dtype=float)
    if np.any(A <= 0.0):
        raise ZeroAreaError("apparent topography needs A > 0 in every cell")
    g = -(m.rho * SQRT_PI * m.cf / m.k) * Q / (A * A)
    b = np.empty_like(g)
    b[0] = 0.0
    if b.size > 1:
        b[1:] = np.cumsum(0.5 * dx * (g[1:] + g[:-1]))
    return m.sqrt_a0 + b
