"""Two-point numerical fluxes for the homogeneous (A, Q) system.

Four interchangeable flux functions: Rusanov, HLL, VFRoe-ncv (with a Rusanov
entropy correction) and a kinetic flux built on the compact-support
equilibrium with temperature T = k*sqrt(A)/(3*rho*sqrt(pi)).

The `_*_arrays` functions are vacuum-safe and vectorized over interfaces;
they are what the numpy backend steps on.  The public wrappers validate
their inputs and speak `State`/`InterfaceFlux`.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

from .errors import ZeroAreaError
from .model import SQRT_PI, State, VesselModel


class FluxKind(enum.Enum):
    RUSANOV = "rusanov"
    HLL = "hll"
    VFROE_NCV = "vfroe"
    KINETIC = "kinetic"


# integer ids shared with the compiled backend
FLUX_ID = {
    FluxKind.RUSANOV: 0,
    FluxKind.HLL: 1,
    FluxKind.VFROE_NCV: 2,
    FluxKind.KINETIC: 3,
}


class InterfaceFlux(NamedTuple):
    f_a: float  # mass flux (m^3/s)
    f_q: float  # momentum flux (m^4/s^2)


def _safe_div(num, den):
    """num/den with 0 where den == 0 (vacuum interface traces)."""
    den_ok = np.where(den > 0.0, den, 1.0)
    return np.where(den > 0.0, num / den_ok, 0.0)


def _celerity(A, k, rho):
    return np.sqrt(k * np.sqrt(A) / (2.0 * rho * SQRT_PI))


def _ppot(A, k, rho):
    return k * A * np.sqrt(A) / (3.0 * rho * SQRT_PI)


def _phys(A, Q, k, rho):
    return Q, _safe_div(Q * Q, A) + _ppot(A, k, rho)


def _rusanov_arrays(AL, QL, AR, QR, k, rho):
    uL = _safe_div(QL, AL)
    uR = _safe_div(QR, AR)
    cL = _celerity(AL, k, rho)
    cR = _celerity(AR, k, rho)
    c = np.maximum(np.abs(uL) + cL, np.abs(uR) + cR)
    faL, fqL = _phys(AL, QL, k, rho)
    faR, fqR = _phys(AR, QR, k, rho)
    fa = 0.5 * (faL + faR) - 0.5 * c * (AR - AL)
    fq = 0.5 * (fqL + fqR) - 0.5 * c * (QR - QL)
    return fa, fq


def _hll_arrays(AL, QL, AR, QR, k, rho):
    uL = _safe_div(QL, AL)
    uR = _safe_div(QR, AR)
    cL = _celerity(AL, k, rho)
    cR = _celerity(AR, k, rho)
    c1 = np.minimum(uL - cL, uR - cR)
    c2 = np.maximum(uL + cL, uR + cR)
    faL, fqL = _phys(AL, QL, k, rho)
    faR, fqR = _phys(AR, QR, k, rho)
    mid = (c1 < 0.0) & (0.0 < c2)
    den = np.where(mid, c2 - c1, 1.0)
    fa_mid = (c2 * faL - c1 * faR) / den + c1 * c2 / den * (AR - AL)
    fq_mid = (c2 * fqL - c1 * fqR) / den + c1 * c2 / den * (QR - QL)
    fa = np.where(0.0 <= c1, faL, np.where(c2 <= 0.0, faR, fa_mid))
    fq = np.where(0.0 <= c1, fqL, np.where(c2 <= 0.0, fqR, fq_mid))
    return fa, fq


def _vfroe_arrays(AL, QL, AR, QR, k, rho):
    uL = _safe_div(QL, AL)
    uR = _safe_div(QR, AR)
    cL = _celerity(AL, k, rho)
    cR = _celerity(AR, k, rho)
    ct = 0.5 * (cL + cR)
    ut = 0.5 * (uL + uR)
    ustar = ut - 2.0 * (cR - cL)
    cstar = np.maximum(ct - 0.125 * (uR - uL), 0.0)  # vacuum guard
    w = 2.0 * rho / k
    astar = cstar * cstar * cstar * cstar * math.pi * (w * w)
    qstar = astar * ustar
    faL, fqL = _phys(AL, QL, k, rho)
    faR, fqR = _phys(AR, QR, k, rho)
    faS, fqS = _phys(astar, qstar, k, rho)
    lam1 = ut - ct
    lam2 = ut + ct
    fa = np.where(lam1 > 0.0, faL, np.where(lam2 < 0.0, faR, faS))
    fq = np.where(lam1 > 0.0, fqL, np.where(lam2 < 0.0, fqR, fqS))
    # entropy correction across a sonic rarefaction, and the degenerate
    # vacuum case, fall back to Rusanov
    fix = ((uL - cL < 0.0) & (0.0 < uR - cR)) | ((uL + cL < 0.0) & (0.0 < uR + cR))
    fix = fix | (ct - 0.125 * (uR - uL) < 0.0)
    if np.any(fix):
        fa_r, fq_r = _rusanov_arrays(AL, QL, AR, QR, k, rho)
        fa = np.where(fix, fa_r, fa)
        fq = np.where(fix, fq_r, fq)
    return fa, fq


def _kinetic_arrays(AL, QL, AR, QR, k, rho):
    uL = _safe_div(QL, AL)
    uR = _safe_div(QR, AR)
    sL = np.sqrt(k * np.sqrt(AL) / (rho * SQRT_PI))  # sqrt(3*T_L)
    sR = np.sqrt(k * np.sqrt(AR) / (rho * SQRT_PI))
    Mp = np.maximum(0.0, uL + sL)
    Mm = np.maximum(0.0, uL - sL)
    mp = np.minimum(0.0, uR + sR)
    mm = np.minimum(0.0, uR - sR)
    wL = _safe_div(AL, 2.0 * sL)
    wR = _safe_div(AR, 2.0 * sR)
    fa = wL * 0.5 * (Mp * Mp - Mm * Mm) + wR * 0.5 * (mp * mp - mm * mm)
    fq = wL * (Mp * Mp * Mp - Mm * Mm * Mm) / 3.0 + wR * (mp * mp * mp - mm * mm * mm) / 3.0
    return fa, fq


_FLUX_ARRAYS = {
    FluxKind.RUSANOV: _rusanov_arrays,
    FluxKind.HLL: _hll_arrays,
    FluxKind.VFROE_NCV: _vfroe_arrays,
    FluxKind.KINETIC: _kinetic_arrays,
}


def flux_arrays(kind: FluxKind, AL, QL, AR, QR, k, rho):
    """Vectorized flux over interface trace arrays (vacuum tolerated)."""
    return _FLUX_ARRAYS[kind](AL, QL, AR, QR, k, rho)


def _check(UL: State, UR: State):
    if UL.A <= 0.0 or UR.A <= 0.0:
        raise ZeroAreaError(f"flux needs A > 0 on both sides, got {UL.A!r}, {UR.A!r}")


def rusanov_flux(UL: State, UR: State, m: VesselModel) -> InterfaceFlux:
    _check(UL, UR)
    return InterfaceFlux(*_rusanov_arrays(UL.A, UL.Q, UR.A, UR.Q, m.k, m.rho))


def hll_flux(UL: State, UR: State, m: VesselModel) -> InterfaceFlux:
    _check(UL, UR)
    return InterfaceFlux(*_hll_arrays(UL.A, UL.Q, UR.A, UR.Q, m.k, m.rho))


def vfroe_ncv_flux(UL: State, UR: State, m: VesselModel) -> InterfaceFlux:
    _check(UL, UR)
    return InterfaceFlux(*_vfroe_arrays(UL.A, UL.Q, UR.A, UR.Q, m.k, m.rho))


def kinetic_flux(UL: State, UR: State, m: VesselModel) -> InterfaceFlux:
    _check(UL, UR)
    return InterfaceFlux(*_kinetic_arrays(UL.A, UL.Q, UR.A, UR.Q, m.k, m.rho))


def numerical_flux(kind: FluxKind, UL: State, UR: State, m: VesselModel) -> InterfaceFlux:
    _check(UL, UR)
    return InterfaceFlux(*flux_arrays(kind, UL.A, UL.Q, UR.A, UR.Q, m.k, m.rho))
