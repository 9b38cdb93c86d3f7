"""Command-line front end.

Exit codes: 0 success, 2 configuration error (including an empty root
bracket), 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import _split, fixture_names, load_config, parse_grid, parse_length
from .equilibrium import DEFAULT_TOL
from .errors import ConfigurationError, ConvergenceError, NoZeroCrossing
from .model import PermittivityModel, SystemConfig
from .scan import (DEFAULT_TOL_D, ScanRecord, ScanRequest, find_zero_thickness,
                   format_length, run_point, scan, write_csv)

EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3


def _common(p):
    p.add_argument("--config", help="config file or shipped fixture name")
    p.add_argument("--material")
    p.add_argument("--model", help="drude | drude-fixed:<T> | plasma (comma list for scans)")
    p.add_argument("--a", help="plate separation, e.g. 0.5um")
    p.add_argument("--d", help="plate thickness, e.g. 20nm")
    p.add_argument("--t1", type=float, help="upper plate / environment temperature, K")
    p.add_argument("--t2", type=float, help="lower plate temperature, K")
    p.add_argument("--tol", type=float, help=f"relative tolerance (default {DEFAULT_TOL:g})")
    p.add_argument("--out", help="write CSV here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir-neq",
        description="Casimir pressure between similar metal plates at different temperatures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="full pressure breakdown for one configuration")
    _common(p)

    p = sub.add_parser("scan", help="scan separation or thickness and write CSV")
    _common(p)
    p.add_argument("--axis", choices=("separation", "thickness"))
    p.add_argument("--grid", help="start:stop:count or comma list, with units")
    p.add_argument("--outputs", help="comma list of output columns")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("find-zero", help="thickness where the nonequilibrium term vanishes")
    _common(p)
    p.add_argument("--d-lo")
    p.add_argument("--d-hi")
    p.add_argument("--tol-d", help="bracket width at which to stop, e.g. 0.05nm")

    p = sub.add_parser("materials", help="material database")
    p.add_argument("action", choices=("list",))
    p.add_argument("--config")

    sub.add_parser("fixtures", help="list shipped figure configs")
    return parser


def _settings(args):
    cfg = load_config(args.config) if args.config else load_config()
    overrides = {
        "system.material": args.material, "system.model": args.model,
        "system.separation": args.a, "system.thickness": args.d,
        "system.t1": args.t1, "system.t2": args.t2, "tolerances.tol": args.tol,
    }
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = str(value)
    cfg.setdefault("tolerances.tol", repr(DEFAULT_TOL))
    if args.config:
        cfg["source"] = args.config
    return cfg


def _system(cfg, models=None):
    name = cfg.get("system.material", "Au")
    if name not in cfg.materials:
        raise ConfigurationError(f"unknown material {name!r} (have {', '.join(cfg.materials)})")
    model = models[0] if models else PermittivityModel.parse(cfg.get("system.model", "drude"))
    return SystemConfig.similar(
        cfg.materials[name], model,
        parse_length(cfg.get("system.thickness", "20nm")),
        parse_length(cfg.get("system.separation", "1um")),
        float(cfg.get("system.t1", 300.0)), float(cfg.get("system.t2", 500.0)))


def _metadata(cfg, command):
    lines = [f"casimir-neq {__version__}", f"command: {command}"]
    lines += [f"{k} = {v}" for k, v in sorted(cfg.items())]
    return lines


def _emit(records, columns, cfg, command, out):
    meta = _metadata(cfg, command)
    if out:
        write_csv(records, columns, out, meta)
    else:
        write_csv(records, columns, sys.stdout, meta)


def cmd_point(args):
    cfg = _settings(args)
    models = [PermittivityModel.parse(m) for m in _split(cfg.get("system.model", "drude"))]
    if len(models) != 1:
        raise ConfigurationError("point takes exactly one model")
    system = _system(cfg, models)
    tol = float(cfg.get("tolerances.tol", DEFAULT_TOL))
    b = run_point(system, tol)
    values = b.as_dict()
    values["p_neq_upper"] = b.p_neq + b.blackbody_offset
    if args.out:
        _emit([ScanRecord(system.separation, values)], list(values), cfg, "point", args.out)
    else:
        print(f"# {system.material.name}, {system.model}, d = {format_length(system.thickness)}, "
              f"a = {format_length(system.separation)}, T1 = {system.t1:g} K, T2 = {system.t2:g} K")
        for k, v in values.items():
            print(f"{k:24s} {v: .10e}")
    return 0


def cmd_scan(args):
    cfg = _settings(args)
    for key, value in (("scan.axis", args.axis), ("scan.grid", args.grid),
                       ("scan.outputs", args.outputs), ("scan.workers", args.workers)):
        if value is not None:
            cfg[key] = str(value)
    if args.model is not None:
        cfg["scan.models"] = args.model
    models = tuple(PermittivityModel.parse(m)
                   for m in _split(cfg.get("scan.models", cfg.get("system.model", "drude"))))
    system = _system(cfg, models)
    axis = cfg.get("scan.axis", "separation")
    if "scan.grid" not in cfg:
        raise ConfigurationError("scan needs a grid (--grid or [scan] grid)")
    fixed_key = "scan.thickness" if axis == "separation" else "scan.separation"
    fixed = tuple(parse_length(x) for x in _split(cfg.get(fixed_key, "")))
    materials = tuple(_split(cfg.get("scan.materials", "")))
    for m in materials:
        if m not in cfg.materials:
            raise ConfigurationError(f"unknown material {m!r}")
    request = ScanRequest(
        base=system, axis=axis, grid=parse_grid(cfg["scan.grid"]), models=models,
        outputs=tuple(_split(cfg.get("scan.outputs", "p_neq"))),
        materials=tuple(cfg.materials[m] for m in materials), fixed=fixed)
    tol = float(cfg.get("tolerances.tol", DEFAULT_TOL))
    records = scan(request, tol, workers=int(cfg.get("scan.workers", 1)))
    _emit(records, request.columns(), cfg, "scan", args.out)
    return 0


def cmd_find_zero(args):
    cfg = _settings(args)
    for key, value in (("find-zero.d_lo", args.d_lo), ("find-zero.d_hi", args.d_hi),
                       ("tolerances.tol_d", args.tol_d)):
        if value is not None:
            cfg[key] = value
    system = _system(cfg)
    d_lo = parse_length(cfg.get("find-zero.d_lo", "20nm"))
    d_hi = parse_length(cfg.get("find-zero.d_hi", "30nm"))
    tol_d = parse_length(cfg["tolerances.tol_d"]) if "tolerances.tol_d" in cfg else DEFAULT_TOL_D
    tol = float(cfg.get("tolerances.tol", DEFAULT_TOL))
    d = find_zero_thickness(system, d_lo, d_hi, tol_d, tol)
    print(f"{d:.12g}  # {d * 1e9:.2f} nm")
    return 0


def cmd_materials(args):
    cfg = load_config(args.config) if args.config else load_config()
    print(f"{'name':8s} {'hbar*wp [eV]':>12s} {'c/wp [nm]':>10s}  gamma [meV] at T [K]")
    for name, mat in cfg.materials.items():
        table = ", ".join(f"{g * 1000:g}@{t:g}" for t, g in mat.gamma_table)
        depth = 2.99792458e8 / mat.omega_p * 1e9
        print(f"{name:8s} {mat.plasma_ev:12g} {depth:10.1f}  {table}")
    return 0


def cmd_fixtures(args):
    print("\n".join(fixture_names()))
    return 0


COMMANDS = {"point": cmd_point, "scan": cmd_scan, "find-zero": cmd_find_zero,
            "materials": cmd_materials, "fixtures": cmd_fixtures}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, NoZeroCrossing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
