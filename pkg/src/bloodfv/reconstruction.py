"""Second-order linear reconstruction: minmod, MUSCL/ENO slopes, cell traces.

Per cell the traces at the two interfaces are s -/+ (dx/2)*Ds for A and
Psi = sqrt(A) - sqrt(A0); the velocity uses the cross-weighted form
u_{i-1/2+} = u_i - (A_{i+1/2-}/A_i)(dx/2)Du_i (and mirrored), which keeps
the per-cell discharge average exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SlopeKind:
    """Slope operator selector: 'muscl', 'eno' or 'enom' with its thetas."""

    kind: str = "muscl"
    theta_eno: float = 0.25
    theta_enom: float = 0.5

    def __post_init__(self):
        if self.kind not in ("muscl", "eno", "enom"):
            raise ValueError(f"unknown slope kind {self.kind!r}")
        if not 0.0 <= self.theta_eno <= 1.0:
            raise ValueError(f"theta_eno must be in [0, 1], got {self.theta_eno}")
        if not 0.0 <= self.theta_enom <= 1.0:
            raise ValueError(f"theta_enom must be in [0, 1], got {self.theta_enom}")


MUSCL = SlopeKind("muscl")

# integer ids shared with the compiled backend
SLOPE_ID = {"muscl": 0, "eno": 1, "enom": 2}


def minmod(x, y):
    """min(x,y) if both >= 0, max(x,y) if both <= 0, else 0."""
    return np.where((x >= 0.0) & (y >= 0.0), np.minimum(x, y),
                    np.where((x <= 0.0) & (y <= 0.0), np.maximum(x, y), 0.0))


def slopes_interior(s: np.ndarray, dx: float, kind: SlopeKind) -> np.ndarray:
    """Limited slopes for cells 1..n-2 of `s`; the two end cells get 0.

    ENO-type operators additionally zero the next-to-end cells, whose
    five-point stencil would leave the array.
    """
    d = np.zeros_like(s)
    dl = (s[1:-1] - s[:-2]) / dx
    dr = (s[2:] - s[1:-1]) / dx
    dm = minmod(dl, dr)
    if kind.kind == "muscl":
        d[1:-1] = dm
        return d
    d2 = np.zeros(s.size - 1)  # second difference at interface j+1/2, j = 0..n-2
    d2[1:-1] = minmod((s[2:-1] - 2.0 * s[1:-2] + s[:-3]) / (dx * dx),
                      (s[3:] - 2.0 * s[2:-1] + s[1:-2]) / (dx * dx))
    de = np.zeros_like(s)
    th = kind.theta_eno * 0.5 * dx
    de[2:-2] = minmod(dl[1:-1] + th * d2[1:-2], dr[1:-1] - th * d2[2:-1])
    if kind.kind == "eno":
        return de
    d[2:-2] = minmod(de[2:-2], 2.0 * kind.theta_enom * dm[1:-1])
    return d


def slope(kind: SlopeKind, stencil, dx: float) -> float:
    """Limited slope for the centre cell of a 5-value stencil."""
    s = np.asarray(stencil, dtype=float)
    if s.shape != (5,):
        raise ValueError("slope needs a 5-cell stencil")
    dl = (s[2] - s[1]) / dx
    dr = (s[3] - s[2]) / dx
    dm = minmod(dl, dr)
    if kind.kind == "muscl":
        return float(dm)
    d2m = minmod((s[2] - 2.0 * s[1] + s[0]) / (dx * dx),
                 (s[3] - 2.0 * s[2] + s[1]) / (dx * dx))
    d2p = minmod((s[3] - 2.0 * s[2] + s[1]) / (dx * dx),
                 (s[4] - 2.0 * s[3] + s[2]) / (dx * dx))
    th = kind.theta_eno * 0.5 * dx
    de = minmod(dl + th * d2m, dr - th * d2p)
    if kind.kind == "eno":
        return float(de)
    return float(minmod(de, 2.0 * kind.theta_enom * dm))


@dataclass(frozen=True)
class CellTraces:
    """Per-cell interface traces; `left` is the value at x_{i-1/2}+, `right` at x_{i+1/2}-."""

    a_left: np.ndarray
    a_right: np.ndarray
    u_left: np.ndarray
    u_right: np.ndarray
    psi_left: np.ndarray
    psi_right: np.ndarray
    sqrt_a0_left: np.ndarray
    sqrt_a0_right: np.ndarray


def reconstruct_cells(A: np.ndarray, Q: np.ndarray, sqrt_a0: np.ndarray,
                      dx: float, kind: SlopeKind) -> CellTraces:
    """Traces of A, u and Psi for every cell of the given (ghost-padded) arrays.

    The caller is expected to pad with one ghost cell per side; the outermost
    cells fall back to first order (zero slope) either way.
    """
    A = np.asarray(A, dtype=float)
    u = Q / A
    psi = np.sqrt(A) - sqrt_a0
    da = slopes_interior(A, dx, kind)
    du = slopes_interior(u, dx, kind)
    dpsi = slopes_interior(psi, dx, kind)
    h = 0.5 * dx
    a_left = np.maximum(A - h * da, 0.0)
    a_right = np.maximum(A + h * da, 0.0)
    u_left = u - (a_right / A) * (h * du)
    u_right = u + (a_left / A) * (h * du)
    psi_left = psi - h * dpsi
    psi_right = psi + h * dpsi
    sa0_left = np.sqrt(a_left) - psi_left
    sa0_right = np.sqrt(a_right) - psi_right
    return CellTraces(a_left, a_right, u_left, u_right,
                      psi_left, psi_right, sa0_left, sa0_right)
