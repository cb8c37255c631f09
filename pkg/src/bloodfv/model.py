"""Physical model of the vessel: state, pressure law, wave speed, flux.

The conservative unknowns are the cross-section area A (m^2) and the
discharge Q = A*u (m^3/s).  The wall responds linearly in the radius,
p = p0 + k*(sqrt(A) - sqrt(A0))/sqrt(pi), which closes the system with the
pressure-flux term P(A) = k*A^(3/2)/(3*rho*sqrt(pi)) and the pulse-wave
speed c = sqrt(k*sqrt(A)/(2*rho*sqrt(pi))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import ZeroAreaError

SQRT_PI = math.sqrt(math.pi)


class State(NamedTuple):
    """Conservative pair for one cell (or arrays of cells)."""

    A: float
    Q: float

    @property
    def u(self):
        return self.Q / self.A


@dataclass(frozen=True)
class Grid:
    """Uniform 1D cell layout; cell centers at x_left + (i + 1/2)*dx."""

    n_cells: int
    dx: float
    x_left: float = 0.0

    def __post_init__(self):
        if self.n_cells < 1:
            raise ValueError(f"n_cells must be >= 1, got {self.n_cells}")
        if not self.dx > 0:
            raise ValueError(f"dx must be > 0, got {self.dx}")

    @classmethod
    def of_length(cls, n_cells: int, length: float, x_left: float = 0.0) -> "Grid":
        return cls(n_cells, length / n_cells, x_left)

    @property
    def length(self) -> float:
        return self.n_cells * self.dx

    def cell_centers(self) -> np.ndarray:
        return self.x_left + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class VesselModel:
    """Wall stiffness, blood density, external pressure, friction and rest section.

    The rest section is carried as cell-centered sqrt(A0) (the quantity the
    scheme differences); the raw A0 samples are kept alongside so initial
    conditions at rest reproduce A0 bit-for-bit.
    """

    k: float
    rho: float
    p0: float = 0.0
    cf: float = 0.0
    a0: np.ndarray = field(default=None)  # rest cross-section per cell (m^2)
    sqrt_a0: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        if self.cf < 0:
            raise ValueError(f"Cf must be >= 0, got {self.cf}")
        a0 = np.atleast_1d(np.asarray(self.a0, dtype=float))
        if not np.all(a0 > 0):
            raise ValueError("rest section A0 must be positive in every cell")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "sqrt_a0", np.sqrt(a0))

    @classmethod
    def from_rest_radius(cls, grid: Grid, radius, k: float, rho: float,
                         p0: float = 0.0, cf: float = 0.0) -> "VesselModel":
        """Build the model from a rest radius: a constant or a callable R0(x)."""
        x = grid.cell_centers()
        if callable(radius):
            r0 = np.asarray([radius(xi) for xi in x], dtype=float)
        else:
            r0 = np.full(grid.n_cells, float(radius))
        return cls(k=k, rho=rho, p0=p0, cf=cf, a0=math.pi * r0 * r0)

    @property
    def nu(self) -> float:
        """Kinematic viscosity implied by Cf = 8*pi*nu."""
        return self.cf / (8.0 * math.pi)

    def womersley(self, omega: float, r0: float) -> float:
        """Womersley number alpha = R0*sqrt(omega/nu); inf for frictionless flow."""
        if self.cf == 0.0:
            return math.inf
        return r0 * math.sqrt(omega / self.nu)


def celerity(A, m: VesselModel):
    """Moens-Korteweg pulse wave speed c = sqrt(k*sqrt(A)/(2*rho*sqrt(pi)))."""
    return np.sqrt(m.k * np.sqrt(A) / (2.0 * m.rho * SQRT_PI))


def pressure(A, m: VesselModel, cell=None):
    """Transmural pressure law p = p0 + k*(sqrt(A) - sqrt(A0))/sqrt(pi)."""
    sa0 = m.sqrt_a0 if cell is None else m.sqrt_a0[cell]
    return m.p0 + m.k * (np.sqrt(A) - sa0) / SQRT_PI

def pressure_potential(A, m: VesselModel):
    """Pressure flux term P(A) = k*A^(3/2)/(3*rho*sqrt(pi))."""
    return m.k * A * np.sqrt(A) / (3.0 * m.rho * SQRT_PI)


def eigenvalues(s: State, m: VesselModel):
    """Characteristic speeds (u - c, u + c); requires A > 0."""
    if np.any(np.asarray(s.A) <= 0.0):
        raise ZeroAreaError(f"eigenvalues need A > 0, got A = {s.A!r}")
    u = s.Q / s.A
    c = celerity(s.A, m)
    return u - c, u + c


def physical_flux(s: State, m: VesselModel):
    """Exact flux (Q, Q^2/A + P(A)); requires A > 0."""
    if np.any(np.asarray(s.A) <= 0.0):
        raise ZeroAreaError(f"physical flux needs A > 0, got A = {s.A!r}")
    return s.Q, s.Q * s.Q / s.A + pressure_potential(s.A, m)


def bernoulli_invariant(s: State, m: VesselModel, cell=None):
    """Steady-state invariant Q^2/(2A^2) + (k/(rho*sqrt(pi)))*(sqrt(A) - sqrt(A0))."""
    if np.any(np.asarray(s.A) <= 0.0):
        raise ZeroAreaError(f"Bernoulli invariant needs A > 0, got A = {s.A!r}")
    sa0 = m.sqrt_a0 if cell is None else m.sqrt_a0[cell]
    b = m.k / (m.rho * SQRT_PI)
    return s.Q * s.Q / (2.0 * s.A * s.A) + b * (np.sqrt(s.A) - sa0)


InitialCondition = Callable[[np.ndarray], State]
