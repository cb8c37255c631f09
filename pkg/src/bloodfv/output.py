"""CSV emission: snapshots, convergence reports, oracle dumps.

All files are plain comma-separated text with dot decimals and %.17g
values so a round-trip through the file reproduces the doubles exactly.
"""

from __future__ import annotations

import math
import os
from typing import Sequence

import numpy as np

from .driver import Oracle, RunResult, StudyResult
from .model import SQRT_PI

SNAPSHOT_HEADER = "x,A,Q,u,R,p"


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_snapshot_csv(result: RunResult, directory) -> list:
    """One file per snapshot (snapshot_000.csv, ...) plus a snapshots.csv index.

    Columns: x,A,Q,u,R,p per cell; the index lists each snapshot's time and
    the mass ledger entry sum(A)*dx.
    """
    if not result.snapshots:
        raise ValueError("run produced no snapshots")
    os.makedirs(directory, exist_ok=True)
    m = result.scenario.model
    x = result.scenario.grid.cell_centers()
    paths = []
    for idx, (t, A, Q) in enumerate(result.snapshots):
        path = os.path.join(directory, f"snapshot_{idx:03d}.csv")
        u = Q / A
        r = np.sqrt(A / math.pi)
        p = m.p0 + m.k * (np.sqrt(A) - m.sqrt_a0) / SQRT_PI
        with open(path, "w", newline="\n") as fh:
            fh.write(SNAPSHOT_HEADER + "\n")
            for i in range(x.size):
                fh.write(",".join(_fmt(v) for v in
                                  (x[i], A[i], Q[i], u[i], r[i], p[i])) + "\n")
        paths.append(path)
    index = os.path.join(directory, "snapshots.csv")
    with open(index, "w", newline="\n") as fh:
        fh.write("index,t,mass\n")
        for idx, ((t, _, _), (_, mass)) in enumerate(zip(result.snapshots,
                                                         result.mass_ledger)):
            fh.write(f"{idx},{_fmt(t)},{_fmt(mass)}\n")
    paths.append(index)
    return paths


def read_snapshot_csv(path):
    """Round-trip reader for files written by write_snapshot_csv."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != SNAPSHOT_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return {name: data[:, i] for i, name in enumerate(SNAPSHOT_HEADER.split(","))}


def write_error_report(study: StudyResult, path) -> None:
    """J / L1 table with a final regression row, mirroring the campaign tables."""
    if not study.cells:
        raise ValueError("empty study: nothing to report")
    with open(path, "w", newline="\n") as fh:
        fh.write("J,L1_error\n")
        for j, err in zip(study.cells, study.errors):
            fh.write(f"{j},{_fmt(err)}\n")
        fh.write(f"regression,{_fmt(study.slope)}\n")


def write_oracle_csv(oracle: Oracle, x: np.ndarray, times: Sequence[float], path) -> None:
    """Oracle samples over an (x, t) lattice: t,x,A,Q rows."""
    with open(path, "w", newline="\n") as fh:
        fh.write("t,x,A,Q\n")
        for t in times:
            s = oracle(np.asarray(x, dtype=float), float(t))
            A = np.broadcast_to(np.asarray(s.A, dtype=float), np.shape(x))
            Q = np.broadcast_to(np.asarray(s.Q, dtype=float), np.shape(x))
            for i in range(np.shape(x)[0]):
                fh.write(f"{_fmt(t)},{_fmt(x[i])},{_fmt(A[i])},{_fmt(Q[i])}\n")
