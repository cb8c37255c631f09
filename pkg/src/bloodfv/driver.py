"""Scenario assembly, time loop, error norms and convergence studies."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ._backend import kernels
from .boundary import NonReflecting, Side
from .errors import PositivityError
from .fluxes import FluxKind
from .model import Grid, State, VesselModel
from .stepping import (DEFAULT_CFL, SchemeOrder, StepReport, cfl_timestep,
                       step_first_order, step_second_order)
from .wellbalanced import FrictionTreatment, SourceTreatment

Oracle = Callable[[np.ndarray, float], State]


@dataclass(frozen=True)
class Scenario:
    grid: Grid
    model: VesselModel
    initial: Callable[[np.ndarray], State]
    boundaries: Tuple[object, object] = (NonReflecting(), NonReflecting())
    flux: FluxKind = FluxKind.HLL
    order: SchemeOrder = SchemeOrder(2)
    source: SourceTreatment = SourceTreatment.HYDROSTATIC
    friction: FrictionTreatment = FrictionTreatment.SEMI_IMPLICIT
    t_end: float = 0.0
    snapshot_times: Tuple[float, ...] = ()
    cfl: Optional[float] = None
    name: str = "custom"

    def __post_init__(self):
        if self.t_end < 0.0:
            raise ValueError("t_end must be >= 0")
        snaps = tuple(sorted(self.snapshot_times))
        if snaps and (snaps[0] < 0.0 or snaps[-1] > self.t_end):
            raise ValueError("snapshot times must lie in [0, t_end]")
        object.__setattr__(self, "snapshot_times", snaps)
        if self.source is SourceTreatment.NAIVE_EXPLICIT and self.order.order != 1:
            raise ValueError("the naive explicit source is defined for the first-order scheme only")


@dataclass
class RunResult:
    scenario: Scenario
    snapshots: List[Tuple[float, np.ndarray, np.ndarray]]  # (t, A, Q)
    mass_ledger: List[Tuple[float, float]]                 # (t, sum A dx)
    dt_history: np.ndarray
    wavespeed_history: np.ndarray
    n_cfl: float
    max_abs_u: float   # max over all cells and completed steps

    @property
    def step_reports(self) -> List[StepReport]:
        return [StepReport(dt, s, self.n_cfl)
                for dt, s in zip(self.dt_history, self.wavespeed_history)]

    def final(self) -> Tuple[float, np.ndarray, np.ndarray]:
        return self.snapshots[-1]


def _check_state(A, Q, grid, t):
    bad = ~np.isfinite(A) | ~np.isfinite(Q) | (A <= 0.0)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise PositivityError(i, grid.x_left + (i + 0.5) * grid.dx, t, float(A[i]))


def run(sc: Scenario) -> RunResult:
    """Advance the scenario with adaptive CFL steps, capturing snapshots.

    The final step is truncated to land exactly on t_end; intermediate
    snapshots are captured at the first completed step past each requested
    time (within one dt of the request).
    """
    grid, m = sc.grid, sc.model
    x = grid.cell_centers()
    init = sc.initial(x)
    A = np.array(np.broadcast_to(np.asarray(init.A, dtype=float), x.shape))
    Q = np.array(np.broadcast_to(np.asarray(init.Q, dtype=float), x.shape))
    amin, umax = kernels.state_stats(A, Q)
    if not (amin > 0.0 and math.isfinite(umax)):
        _check_state(A, Q, grid, 0.0)
    bc_left, bc_right = sc.boundaries

    n_cfl = sc.cfl if sc.cfl is not None else DEFAULT_CFL[sc.order.order]
    snapshots: List[Tuple[float, np.ndarray, np.ndarray]] = []
    ledger: List[Tuple[float, float]] = []
    dts: List[float] = []
    speeds: List[float] = []
    pending = list(sc.snapshot_times)
    max_abs_u = umax

    def capture(t):
        snapshots.append((t, A.copy(), Q.copy()))
        ledger.append((t, float(np.sum(A) * grid.dx)))

    while pending and pending[0] <= 0.0:
        capture(0.0)
        pending.pop(0)

    t = 0.0
    if sc.order.order == 2:
        def ghost_fn(As, Qs, ts):
            return (bc_left.ghost(Side.LEFT, ts, State(As[0], Qs[0]), m),
                    bc_right.ghost(Side.RIGHT, ts, State(As[-1], Qs[-1]), m))

    while t < sc.t_end:
        dt_cfl = cfl_timestep(A, Q, m, grid.dx, sc.order, sc.flux, n_cfl)
        remaining = sc.t_end - t
        if dt_cfl <= remaining * 1e-14:
            from .errors import BloodFVError
            raise BloodFVError(
                f"time step collapsed at t = {t:.6g} s (dt = {dt_cfl:.3g} s); "
                "the run is unstable or degenerate")
        dt = min(dt_cfl, remaining)
        if sc.order.order == 1:
            gl = bc_left.ghost(Side.LEFT, t, State(A[0], Q[0]), m)
            gr = bc_right.ghost(Side.RIGHT, t, State(A[-1], Q[-1]), m)
            A, Q = step_first_order(A, Q, m, grid.dx, dt, sc.flux, sc.source,
                                    sc.friction, gl, gr)
        else:
            A, Q = step_second_order(A, Q, m, grid.dx, dt, sc.flux, sc.order.slope,
                                     sc.friction, ghost_fn, t)
        t = sc.t_end if dt >= remaining else t + dt
        amin, umax = kernels.state_stats(A, Q)
        if not (amin > 0.0 and math.isfinite(umax)):
            _check_state(A, Q, grid, t)
        dts.append(dt)
        speeds.append(n_cfl * grid.dx / dt_cfl)
        if umax > max_abs_u:
            max_abs_u = umax
        while pending and t >= pending[0]:
            capture(t)
            pending.pop(0)

    if not snapshots or snapshots[-1][0] != t:
        capture(t)
    return RunResult(sc, snapshots, ledger, np.asarray(dts), np.asarray(speeds),
                     n_cfl, max_abs_u)


_FIELDS = {
    "A": lambda A, Q: A,
    "Q": lambda A, Q: Q,
    "R": lambda A, Q: np.sqrt(A / math.pi),
    "u": lambda A, Q: Q / A,
}


def _field_values(field_name, A, Q):
    try:
        return _FIELDS[field_name](A, Q)
    except KeyError:
        raise ValueError(f"unknown field {field_name!r}, expected one of {sorted(_FIELDS)}")


def l1_error(result: RunResult, oracle: Oracle, field_name: str,
             time: Optional[float] = None) -> float:
    """sum_i |num_i - oracle(x_i, t)| * dx at the chosen snapshot (default: last)."""
    if time is None:
        t, A, Q = result.snapshots[-1]
    else:
        match = [s for s in result.snapshots if abs(s[0] - time) <= 1e-12 * max(1.0, time)]
        if not match:
            raise ValueError(f"no snapshot at t = {time!r}; have "
                             f"{[s[0] for s in result.snapshots]!r}")
        t, A, Q = match[0]
    x = result.scenario.grid.cell_centers()
    ref = oracle(x, t)
    num = _field_values(field_name, A, Q)
    exact = _field_values(field_name, np.asarray(ref.A, dtype=float),
                          np.asarray(ref.Q, dtype=float))
    return float(np.sum(np.abs(num - exact)) * result.scenario.grid.dx)


@dataclass(frozen=True)
class StudyResult:
    cells: Tuple[int, ...]
    errors: Tuple[float, ...]
    slope: float       # regression slope of ln(error) vs ln(J)
    intercept: float


def regression_slope(cells: Sequence[int], errors: Sequence[float]) -> Tuple[float, float]:
    """Least-squares slope and intercept of ln(error) against ln(J)."""
    slope, intercept = np.polyfit(np.log(np.asarray(cells, dtype=float)),
                                  np.log(np.asarray(errors, dtype=float)), 1)
    return float(slope), float(intercept)


def convergence_study(builder: Callable[[int], Scenario], cells: Sequence[int],
                      oracle: Oracle, field_name: str,
                      time: Optional[float] = None,
                      max_workers: Optional[int] = None) -> StudyResult:
    """L1(field) against the oracle over a grid-refinement sequence.

    Runs are independent and executed concurrently; results are assembled
    in the given J order.
    """
    cells = list(cells)
    if len(cells) < 3:
        raise ValueError("convergence study needs at least 3 grid sizes")

    def one(j):
        return l1_error(run(builder(j)), oracle, field_name, time)

    with ThreadPoolExecutor(max_workers=max_workers or min(8, len(cells))) as pool:
        errors = list(pool.map(one, cells))
    slope, intercept = regression_slope(cells, errors)
    return StudyResult(tuple(cells), tuple(errors), slope, intercept)
