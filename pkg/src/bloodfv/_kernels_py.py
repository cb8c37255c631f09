"""Pure-numpy step kernels (fallback backend).

All functions take ghost-padded float64 arrays (one ghost cell per side)
and return interior arrays.  The compiled backend in `_kernels_c.pyx`
mirrors these loops statement-for-statement; keep the expression order in
sync so both backends agree bitwise.
"""

from __future__ import annotations

import numpy as np

from .fluxes import FLUX_ID, flux_arrays
from .model import SQRT_PI
from .reconstruction import SLOPE_ID, SlopeKind, slopes_interior
from .wellbalanced import reconstruct_interface_arrays

_FLUX_BY_ID = {v: k for k, v in FLUX_ID.items()}

_SLOPE_BY_ID = {v: k for k, v in SLOPE_ID.items()}


def _ppot(A, k, rho):
    return k * A * np.sqrt(A) / (3.0 * rho * SQRT_PI)


def _fluxes_with_fast_path(flux_id, AL, QL, AR, QR, k, rho):
    """Interface fluxes; bit-identical trace pairs short-circuit to F(U)."""
    fa, fq = flux_arrays(_FLUX_BY_ID[flux_id], AL, QL, AR, QR, k, rho)
    same = (AL == AR) & (QL == QR)
    if np.any(same):
        den = np.where(AL > 0.0, AL, 1.0)
        fa = np.where(same, QL, fa)
        fq = np.where(same, np.where(AL > 0.0, QL * QL / den, 0.0) + _ppot(AL, k, rho), fq)
    return fa, fq


def max_wavespeed(A, Q, k, rho, kinetic):
    """max_i |u_i| + c_i (kinetic: c replaced by sqrt(3 T))."""
    u = Q / A
    if kinetic:
        c = np.sqrt(k * np.sqrt(A) / (rho * SQRT_PI))
    else:
        c = np.sqrt(k * np.sqrt(A) / (2.0 * rho * SQRT_PI))
    return float(np.max(np.abs(u) + c))


def state_stats(A, Q):
    """(min A, max |Q/A|) in one sweep; umax is nan/inf when the state is bad."""
    amin = float(np.min(A))
    with np.errstate(divide="ignore", invalid="ignore"):
        umax = float(np.max(np.abs(Q / A)))
    return amin, umax


def step_hydro_first(Ae, Qe, sa0e, dtdx, k, rho, flux_id):
    """First-order update with hydrostatic reconstruction of the source."""
    AL, QL, AR, QR = reconstruct_interface_arrays(
        Ae[:-1], Qe[:-1], Ae[1:], Qe[1:], sa0e[:-1], sa0e[1:])
    fa, fq = _fluxes_with_fast_path(flux_id, AL, QL, AR, QR, k, rho)
    sL = _ppot(Ae[:-1], k, rho) - _ppot(AL, k, rho)
    sR = _ppot(Ae[1:], k, rho) - _ppot(AR, k, rho)
    A1 = Ae[1:-1] - dtdx * (fa[1:] - fa[:-1])
    Q1 = Qe[1:-1] - dtdx * ((fq[1:] + sL[1:]) - (fq[:-1] + sR[:-1]))
    return A1, Q1


def step_naive_first(Ae, Qe, sa0e, a0e, dt, dx, k, rho, flux_id):
    """First-order update with raw interface fluxes and explicit source."""
    fa, fq = _fluxes_with_fast_path(flux_id, Ae[:-1], Qe[:-1], Ae[1:], Qe[1:], k, rho)
    dtdx = dt / dx
    a0_half = 0.5 * (a0e[:-1] + a0e[1:])  # interface means, length n+1
    src = (k * Ae[1:-1]) / (2.0 * rho * SQRT_PI * sa0e[1:-1]) * (a0_half[1:] - a0_half[:-1]) / dx
    A1 = Ae[1:-1] - dtdx * (fa[1:] - fa[:-1])
    Q1 = Qe[1:-1] - dtdx * (fq[1:] - fq[:-1]) + dt * src
    return A1, Q1


def phi_second(Ae, Qe, sa0e, dx, k, rho, flux_id, slope_id, th_eno, th_enom):
    """Second-order spatial operator (one Heun stage): returns (phi_A, phi_Q).

    Traces of A, u and Psi = sqrt(A) - sqrt(A0); hydrostatic interface
    values from the Psi traces; flux corrections per side; the centered
    source is combined with the trace pressure difference in the factored
    form 3*coef*Abar*((a+ - a-) - dsqrtA0), which cancels exactly at rest.
    """
    kind = SlopeKind(_SLOPE_BY_ID[slope_id], theta_eno=th_eno, theta_enom=th_enom)
    u = Qe / Ae
    sqa = np.sqrt(Ae)
    psi = sqa - sa0e
    da = slopes_interior(Ae, dx, kind)
    du = slopes_interior(u, dx, kind)
    dpsi = slopes_interior(psi, dx, kind)
    # first-order fallback at the outermost interior cells (and ghosts)
    for d in (da, du, dpsi):
        d[1] = 0.0
        d[-2] = 0.0
    h = 0.5 * dx
    a_lo = np.maximum(Ae - h * da, 0.0)   # A_{i-1/2+}
    a_hi = np.maximum(Ae + h * da, 0.0)   # A_{i+1/2-}
    u_lo = u - (a_hi / Ae) * (h * du)
    u_hi = u + (a_lo / Ae) * (h * du)
    psi_lo = psi - h * dpsi
    psi_hi = psi + h * dpsi
    s_lo = np.sqrt(a_lo)
    s_hi = np.sqrt(a_hi)
    sa0_lo = s_lo - psi_lo
    sa0_hi = s_hi - psi_hi

    # interface j between cells j and j+1: '-' side from cell j's hi trace,
    # '+' side from cell j+1's lo trace
    sa0_min = np.minimum(sa0_hi[:-1], sa0_lo[1:])
    sL = np.maximum(psi_hi[:-1] + sa0_min, 0.0)
    sR = np.maximum(psi_lo[1:] + sa0_min, 0.0)
    AL = sL * sL
    AR = sR * sR
    QL = AL * u_hi[:-1]
    QR = AR * u_lo[1:]
    fa, fq = _fluxes_with_fast_path(flux_id, AL, QL, AR, QR, k, rho)
    gL = fq - _ppot(AL, k, rho)   # effective momentum flux minus its own P
    gR = fq - _ppot(AR, k, rho)

    # per-cell centered combination: P(A_hi) - P(A_lo) - Fc_i, factored so
    # psi == const gives an exact zero
    coef = k / (3.0 * rho * SQRT_PI)
    sp = s_hi[1:-1]
    sm = s_lo[1:-1]
    abar = sp * sp + sp * sm + sm * sm
    dsa0_c = sa0_hi[1:-1] - sa0_lo[1:-1]
    cent = coef * abar * ((sp - sm) - dsa0_c)

    phi_a = -(fa[1:] - fa[:-1]) / dx
    phi_q = -(gL[1:] - gR[:-1] + cent) / dx
    return phi_a, phi_q


HAS_COMPILED = False
NAME = "python"
