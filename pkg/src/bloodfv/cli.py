"""Command-line front end: run / study / oracle subcommands."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import presets
from ._backend import BACKEND_NAME
from .config import output_directory, parse_config
from .driver import convergence_study, l1_error, run
from .errors import BloodFVError, ConfigError
from .fluxes import FluxKind
from .output import write_error_report, write_oracle_csv, write_snapshot_csv
from .reconstruction import SlopeKind
from .stepping import SchemeOrder
from .wellbalanced import FrictionTreatment, SourceTreatment

_FLUXES = {"rusanov": FluxKind.RUSANOV, "hll": FluxKind.HLL,
           "vfroe": FluxKind.VFROE_NCV, "kinetic": FluxKind.KINETIC}
_FRICTIONS = {"none": FrictionTreatment.NONE, "si": FrictionTreatment.SEMI_IMPLICIT,
              "at": FrictionTreatment.APPARENT_TOPOGRAPHY}
_SOURCES = {"naive": SourceTreatment.NAIVE_EXPLICIT,
            "hydrostatic": SourceTreatment.HYDROSTATIC}


def _add_numerics_flags(p):
    p.add_argument("--config", help="config file path")
    p.add_argument("--preset", choices=sorted(presets.PRESETS),
                   help="built-in scenario name")
    p.add_argument("--cells", type=int, help="number of cells J")
    p.add_argument("--flux", choices=sorted(_FLUXES))
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--slope", choices=("muscl", "eno", "enom"))
    p.add_argument("--friction", choices=sorted(_FRICTIONS))
    p.add_argument("--source", choices=sorted(_SOURCES))
    p.add_argument("--t-end", type=float, dest="t_end")
    p.add_argument("--cfl", type=float)
    p.add_argument("--out", default="out", help="output directory")


def _scenario_from_args(args):
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
        sc = parse_config(text)
        out = output_directory(text)
        if out and args.out == "out":
            args.out = out
    elif args.preset:
        sc = presets.build(args.preset, cells=args.cells)
    else:
        raise ConfigError("either --config or --preset is required")
    if args.preset and args.config:
        raise ConfigError("--preset and --config are mutually exclusive")
    if args.cells and args.config:
        raise ConfigError("--cells applies to --preset runs only")
    if args.flux:
        sc = replace(sc, flux=_FLUXES[args.flux])
    if args.order or args.slope:
        order = args.order or sc.order.order
        slope = SlopeKind(args.slope) if args.slope else sc.order.slope
        sc = replace(sc, order=SchemeOrder(order, slope))
    if args.friction:
        sc = replace(sc, friction=_FRICTIONS[args.friction])
    if args.source:
        sc = replace(sc, source=_SOURCES[args.source])
    if args.cfl is not None:
        sc = replace(sc, cfl=args.cfl)
    if args.t_end is not None:
        snaps = tuple(s for s in sc.snapshot_times if s <= args.t_end)
        sc = replace(sc, t_end=args.t_end, snapshot_times=snaps or (args.t_end,))
    return sc


def _cmd_run(args):
    sc = _scenario_from_args(args)
    result = run(sc)
    paths = write_snapshot_csv(result, args.out)
    print(f"[{BACKEND_NAME}] {sc.name}: {len(result.dt_history)} steps, "
          f"{len(result.snapshots)} snapshots -> {args.out}")
    oracle = presets.preset_oracle(sc)
    if oracle is not None:
        for field in ("R", "Q"):
            print(f"  L1({field}) vs analytic solution: "
                  f"{l1_error(result, oracle, field):.6e}")
    return 0


def _cmd_study(args):
    if not args.preset:
        raise ConfigError("study requires --preset")
    if not args.cells:
        raise ConfigError("study requires --cells as a comma-separated list")
    cells = [int(tok) for tok in str(args.cells).split(",")]
    base = presets.build(args.preset)
    oracle = presets.preset_oracle(base)
    if oracle is None:
        raise ConfigError(f"preset {args.preset!r} has no analytic oracle for a study")

    def builder(j):
        args2 = argparse.Namespace(**vars(args))
        args2.cells = j
        args2.config = None
        return _scenario_from_args(args2)

    study = convergence_study(builder, cells, oracle, args.field)
    import os
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"study_{args.preset}_{args.field}.csv")
    write_error_report(study, path)
    for j, err in zip(study.cells, study.errors):
        print(f"J={j:6d}  L1({args.field}) = {err:.6e}")
    print(f"regression slope: {study.slope:+.4f}  -> {path}")
    return 0


def _cmd_oracle(args):
    sc = presets.build(args.preset, cells=args.cells)
    oracle = presets.preset_oracle(sc)
    if oracle is None:
        raise ConfigError(f"preset {args.preset!r} has no analytic oracle")
    x = sc.grid.cell_centers()
    times = ([float(tok) for tok in args.times.split(",")]
             if args.times else [sc.t_end])
    import os
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"oracle_{args.preset}.csv")
    write_oracle_csv(oracle, x, times, path)
    print(f"oracle samples ({len(times)} times x {x.size} cells) -> {path}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bloodfv",
        description="Well-balanced finite-volume solver for 1D arterial flow")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario and write snapshots")
    _add_numerics_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_study = sub.add_parser("study", help="grid-refinement error study on a preset")
    _add_numerics_flags(p_study)
    p_study.add_argument("--field", default="Q", choices=("A", "Q", "R", "u"))
    p_study.set_defaults(func=_cmd_study)
    # study reuses --cells as a comma-separated list
    for action in p_study._actions:
        if action.dest == "cells":
            action.type = str
            action.help = "comma-separated cell counts, e.g. 50,100,200"

    p_oracle = sub.add_parser("oracle", help="dump an analytic solution as CSV")
    p_oracle.add_argument("--preset", required=True, choices=sorted(presets.PRESETS))
    p_oracle.add_argument("--cells", type=int, default=None)
    p_oracle.add_argument("--times", help="comma-separated sample times (default: t_end)")
    p_oracle.add_argument("--out", default="out")
    p_oracle.set_defaults(func=_cmd_oracle)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BloodFVError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
