"""Config-file parsing: flat INI-style sections to a Scenario.

Either pick a preset in [run] and override selected knobs, or describe an
inline scenario with [grid], [model], [initial] and [boundary.*] sections.
Unknown keys are rejected; all physical values are SI.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import replace
from typing import Optional

import numpy as np

from . import presets
from .boundary import (GivenArea, GivenDischarge, GivenDischargeFlux,
                       NonReflecting, SupercriticalOutflow, load_timeseries)
from .driver import Scenario
from .errors import ConfigError
from .fluxes import FluxKind
from .model import Grid, State, VesselModel
from .reconstruction import SlopeKind
from .stepping import SchemeOrder
from .wellbalanced import FrictionTreatment, SourceTreatment

_FLUXES = {"rusanov": FluxKind.RUSANOV, "hll": FluxKind.HLL,
           "vfroe": FluxKind.VFROE_NCV, "vfroe-ncv": FluxKind.VFROE_NCV,
           "kinetic": FluxKind.KINETIC}
_FRICTIONS = {"none": FrictionTreatment.NONE, "si": FrictionTreatment.SEMI_IMPLICIT,
              "at": FrictionTreatment.APPARENT_TOPOGRAPHY}
_SOURCES = {"hydrostatic": SourceTreatment.HYDROSTATIC,
            "naive": SourceTreatment.NAIVE_EXPLICIT}

_KNOWN_KEYS = {
    "run": {"preset", "cells", "t_end", "snapshots", "flux", "order", "slope",
            "theta_eno", "theta_enom", "friction", "source", "cfl"},
    "grid": {"cells", "length", "x_left"},
    "model": {"k", "rho", "p0", "cf", "radius"},
    "initial": {"kind", "radius_left", "radius_right", "x_step"},
    "boundary.left": {"kind", "value", "file"},
    "boundary.right": {"kind", "value", "file"},
    "output": {"directory"},
}


def _reject_unknown(cp: configparser.ConfigParser):
    for section in cp.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}]")
        for key in cp[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {section}.{key}")


def _get_float(cp, section, key, required=False, default=None):
    if not cp.has_option(section, key):
        if required:
            raise ConfigError(f"missing required key {section}.{key}")
        return default
    raw = cp.get(section, key)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}: not a number: {raw!r}")


def _get_choice(cp, section, key, table, default=None):
    if not cp.has_option(section, key):
        return default
    raw = cp.get(section, key).strip().lower()
    if raw not in table:
        raise ConfigError(f"{section}.{key}: expected one of "
                          f"{sorted(table)}, got {raw!r}")
    return table[raw]


def _boundary_from_section(cp, section):
    if not cp.has_section(section):
        return NonReflecting()
    kind = cp.get(section, "kind", fallback="nonreflecting").strip().lower()
    value = _get_float(cp, section, "value")
    path = cp.get(section, "file", fallback=None)
    if path is not None and value is not None:
        raise ConfigError(f"{section}: give either value or file, not both")

    def series(name):
        if path is not None:
            return load_timeseries(path)
        if value is None:
            raise ConfigError(f"{section}.value (or .file) required for kind={name}")
        return lambda t, v=value: v

    if kind == "nonreflecting":
        return NonReflecting()
    if kind == "given-area":
        return GivenArea(series(kind))
    if kind == "given-discharge":
        return GivenDischarge(series(kind))
    if kind == "given-discharge-flux":
        return GivenDischargeFlux(series(kind))
    if kind == "supercritical-outflow":
        return SupercriticalOutflow()
    raise ConfigError(f"{section}.kind: unknown boundary kind {kind!r}")


def _numerics_overrides(cp, sc: Scenario) -> Scenario:
    if not cp.has_section("run"):
        return sc
    flux = _get_choice(cp, "run", "flux", _FLUXES)
    if flux is not None:
        sc = replace(sc, flux=flux)
    if cp.has_option("run", "order"):
        order = cp.get("run", "order").strip()
        if order not in ("1", "2"):
            raise ConfigError(f"run.order: expected 1 or 2, got {order!r}")
        slope = SlopeKind(cp.get("run", "slope", fallback="muscl").strip().lower(),
                          theta_eno=_get_float(cp, "run", "theta_eno", default=0.25),
                          theta_enom=_get_float(cp, "run", "theta_enom", default=0.5))
        sc = replace(sc, order=SchemeOrder(int(order), slope))
    elif cp.has_option("run", "slope"):
        slope = SlopeKind(cp.get("run", "slope").strip().lower(),
                          theta_eno=_get_float(cp, "run", "theta_eno", default=0.25),
                          theta_enom=_get_float(cp, "run", "theta_enom", default=0.5))
        sc = replace(sc, order=SchemeOrder(sc.order.order, slope))
    friction = _get_choice(cp, "run", "friction", _FRICTIONS)
    if friction is not None:
        sc = replace(sc, friction=friction)
    source = _get_choice(cp, "run", "source", _SOURCES)
    if source is not None:
        sc = replace(sc, source=source)
    cfl = _get_float(cp, "run", "cfl")
    if cfl is not None:
        sc = replace(sc, cfl=cfl)
    t_end = _get_float(cp, "run", "t_end")
    if t_end is not None:
        snaps = tuple(s for s in sc.snapshot_times if s <= t_end)
        sc = replace(sc, t_end=t_end, snapshot_times=snaps or (t_end,))
    if cp.has_option("run", "snapshots"):
        raw = cp.get("run", "snapshots")
        try:
            snaps = tuple(float(tok) for tok in raw.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"run.snapshots: not a number list: {raw!r}")
        sc = replace(sc, snapshot_times=snaps)
    return sc


def _inline_scenario(cp) -> Scenario:
    cells = cp.getint("grid", "cells", fallback=None)
    if cells is None:
        raise ConfigError("missing required key grid.cells")
    length = _get_float(cp, "grid", "length", required=True)
    x_left = _get_float(cp, "grid", "x_left", default=0.0)
    grid = Grid.of_length(cells, length, x_left)

    k = _get_float(cp, "model", "k", required=True)
    rho = _get_float(cp, "model", "rho", required=True)
    p0 = _get_float(cp, "model", "p0", default=0.0)
    cf = _get_float(cp, "model", "cf", default=0.0)
    radius = _get_float(cp, "model", "radius", required=True)
    model = VesselModel.from_rest_radius(grid, radius, k=k, rho=rho, p0=p0, cf=cf)

    kind = cp.get("initial", "kind", fallback="rest").strip().lower()
    if kind == "rest":
        def init(x):
            return State(model.a0.copy(), np.zeros_like(x))
    elif kind == "radius-step":
        r_l = _get_float(cp, "initial", "radius_left", required=True)
        r_r = _get_float(cp, "initial", "radius_right", required=True)
        x_step = _get_float(cp, "initial", "x_step", default=0.0)

        def init(x):
            A = np.where(x <= x_step, math.pi * r_l * r_l, math.pi * r_r * r_r)
            return State(A, np.zeros_like(x))
    else:
        raise ConfigError(f"initial.kind: unknown kind {kind!r}")

    t_end = _get_float(cp, "run", "t_end", required=True) if cp.has_section("run") else None
    if t_end is None:
        raise ConfigError("missing required key run.t_end")
    sc = Scenario(grid=grid, model=model, initial=init,
                  boundaries=(_boundary_from_section(cp, "boundary.left"),
                              _boundary_from_section(cp, "boundary.right")),
                  flux=FluxKind.HLL, order=SchemeOrder(2, SlopeKind("muscl")),
                  friction=FrictionTreatment.SEMI_IMPLICIT,
                  t_end=t_end, snapshot_times=(t_end,), name="inline")
    return _numerics_overrides(cp, sc)


def parse_config(text: str) -> Scenario:
    """Parse a config file body into a validated Scenario."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    _reject_unknown(cp)
    preset = cp.get("run", "preset", fallback=None) if cp.has_section("run") else None
    if preset is not None:
        cells = cp.getint("run", "cells", fallback=None)
        try:
            sc = presets.build(preset.strip(), cells=cells)
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
        for section in ("grid", "model", "initial", "boundary.left", "boundary.right"):
            if cp.has_section(section):
                raise ConfigError(f"section [{section}] not allowed together with run.preset")
        return _numerics_overrides(cp, sc)
    return _inline_scenario(cp)


def output_directory(text: str) -> Optional[str]:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error:
        return None
    return cp.get("output", "directory", fallback=None)
