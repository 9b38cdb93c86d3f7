"""Point evaluations, parameter scans, zero-crossing search and CSV output."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

from .equilibrium import DEFAULT_TOL
from .errors import ConfigurationError, NoZeroCrossing
from .model import PermittivityModel, SystemConfig
from .noneq import PressureBreakdown, delta_pneq, pressure_neq

__all__ = [
    "ScanRequest", "ScanRecord", "run_point", "scan", "find_zero_thickness",
    "output_value", "write_csv", "read_csv", "format_length", "rounded", "AXES",
    "BREAKDOWN_FIELDS", "PRESSURE_FIELDS",
]

AXES = ("separation", "thickness")
BREAKDOWN_FIELDS = tuple(f.name for f in fields(PressureBreakdown))
PRESSURE_FIELDS = ("p_neq", "p_eq_tilde", "delta_p_neq", "delta_prop", "delta_evan",
                   "p_eq_mean", "blackbody_offset", "p_ideal", "p_neq_upper")
DEFAULT_TOL_D = 0.05e-9


def output_value(b: PressureBreakdown, name):
    """Value of a breakdown field or derived column.

    Besides the breakdown fields this knows ``p_neq_upper``, ``<pressure>_uPa``
    (micropascal) and ``<pressure>_over_p0`` (normalised to the ideal-metal
    pressure at zero temperature).
    """
    if name == "p_neq_upper":
        return b.p_neq + b.blackbody_offset
    if name in BREAKDOWN_FIELDS:
        return getattr(b, name)
    for suffix, convert in (("_over_p0", lambda v: v / b.p_ideal), ("_uPa", lambda v: v * 1e6)):
        base = name[: -len(suffix)]
        if name.endswith(suffix) and base in PRESSURE_FIELDS:
            return convert(output_value(b, base))
    raise ConfigurationError(f"unknown output column {name!r}")


def format_length(x):
    if x < 1e-6:
        return f"{x * 1e9:g}nm"
    return f"{x * 1e6:g}um"


@dataclass(frozen=True)
class ScanRequest:
    """A one-dimensional scan over separation or plate thickness.

    Every combination of ``materials`` x ``models`` x ``fixed`` (values of the
    parameter that is *not* scanned) becomes one column group. Empty
    ``materials``/``fixed`` mean "take it from ``base``".
    """

    base: SystemConfig
    axis: str
    grid: tuple
    models: tuple = ()
    outputs: tuple = ("p_neq",)
    materials: tuple = ()
    fixed: tuple = ()

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigurationError(f"axis must be one of {AXES}, got {self.axis!r}")
        grid = tuple(float(g) for g in self.grid)
        if not grid or any(g <= 0 for g in grid) or any(x >= y for x, y in zip(grid, grid[1:])):
            raise ConfigurationError("scan grid must be nonempty, positive and strictly increasing")
        object.__setattr__(self, "grid", grid)
        models = tuple(PermittivityModel.parse(m) if isinstance(m, str) else m
                       for m in (self.models or (self.base.model,)))
        object.__setattr__(self, "models", models)
        for name in self.outputs:
            output_value(_PROBE, name)

    def variants(self):
        """(label, material, model, fixed value) for every column group."""
        materials = self.materials or (self.base.material,)
        fixed_name = "d" if self.axis == "separation" else "a"
        default = self.base.thickness if self.axis == "separation" else self.base.separation
        fixed = self.fixed or (default,)
        out = []
        for mat in materials:
            for model in self.models:
                for value in fixed:
                    label = str(model)
                    if len(materials) > 1:
                        label += f"/{mat if isinstance(mat, str) else mat.name}"
                    if len(fixed) > 1:
                        label += f"/{fixed_name}={format_length(value)}"
                    out.append((label, mat, model, value))
        return out

    def columns(self):
        return [f"{name}@{label}" for label, *_ in self.variants() for name in self.outputs]

    def config_for(self, axis_value, material, model, fixed):
        if self.axis == "separation":
            return self.base.replace(separation=axis_value, thickness=fixed,
                                     model=model, material=material)
        return self.base.replace(thickness=axis_value, separation=fixed,
                                 model=model, material=material)


_PROBE = PressureBreakdown(*([1.0] * len(BREAKDOWN_FIELDS)))


@dataclass
class ScanRecord:
    axis_value: float
    values: dict = field(default_factory=dict)


def run_point(config, tol=DEFAULT_TOL):
    """Full pressure breakdown for one configuration."""
    return pressure_neq(config, tol)


def _evaluate(args):
    config, tol = args
    return run_point(config, tol)


def scan(request: ScanRequest, tol=DEFAULT_TOL, workers=1):
    """Evaluate every grid point for every column group, rows in grid order."""
    variants = request.variants()
    jobs = [(request.config_for(x, mat, model, fixed), tol)
            for x in request.grid for _, mat, model, fixed in variants]
    if workers > 1 and len(jobs) > 1:
        # threads keep a single process; every evaluation is a pure function
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs))
    else:
        results = [_evaluate(job) for job in jobs]
    records = []
    it = iter(results)
    for x in request.grid:
        rec = ScanRecord(x)
        for label, *_ in variants:
            b = next(it)
            for name in request.outputs:
                rec.values[f"{name}@{label}"] = output_value(b, name)
        records.append(rec)
    return records


def find_zero_thickness(config, d_lo, d_hi, tol_d=DEFAULT_TOL_D, tol=DEFAULT_TOL):
    """Plate thickness at which the proper nonequilibrium pressure vanishes.

    Bisects until the bracket is narrower than ``tol_d`` and returns its
    midpoint. Raises NoZeroCrossing if the bracket ends have the same sign
    and ConfigurationError if the term vanishes identically (plasma or
    fixed-gamma models, equal temperatures).
    """
    if not 0 < d_lo < d_hi:
        raise ConfigurationError("need 0 < d_lo < d_hi")
    if not config.model.temperature_dependent or config.t1 == config.t2:
        raise ConfigurationError(
            f"the nonequilibrium term vanishes identically for model {config.model} "
            f"at T1 = {config.t1:g} K, T2 = {config.t2:g} K; nothing to bracket")

    def f(d):
        return sum(delta_pneq(config.replace(thickness=d), tol))

    f_lo, f_hi = f(d_lo), f(d_hi)
    if f_lo == 0.0:
        return d_lo
    if f_hi == 0.0:
        return d_hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoZeroCrossing(
            f"no zero crossing of the nonequilibrium pressure between "
            f"{format_length(d_lo)} and {format_length(d_hi)} "
            f"(values {f_lo:.4g} Pa and {f_hi:.4g} Pa)")
    lo, hi = d_lo, d_hi
    while hi - lo >= tol_d:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _fmt(v):
    return format(v, ".12g")


def write_csv(records, columns, out, metadata=()):
    """Write records as CSV with ``#`` metadata lines; ``out`` is a path or text stream."""
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", encoding="utf-8", newline="") as fh:
            return write_csv(records, columns, fh, metadata)
    for line in metadata:
        out.write(f"# {line}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["axis_value", *columns])
    for rec in records:
        writer.writerow([_fmt(rec.axis_value), *(_fmt(rec.values[c]) for c in columns)])


def read_csv(source):
    """Inverse of write_csv: returns (metadata lines, columns, records)."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, encoding="utf-8", newline="") as fh:
            return read_csv(io.StringIO(fh.read()))
    metadata, body = [], []
    for line in source:
        if line.startswith("#"):
            metadata.append(line[1:].strip())
        else:
            body.append(line)
    rows = list(csv.reader(body))
    header, rows = rows[0], rows[1:]
    columns = header[1:]
    records = [ScanRecord(float(r[0]), {c: float(v) for c, v in zip(columns, r[1:])})
               for r in rows]
    return metadata, columns, records


def rounded(records):
    """Records with every value rounded to the 12 significant digits written to CSV."""
    return [ScanRecord(float(_fmt(r.axis_value)), {k: float(_fmt(v)) for k, v in r.values.items()})
            for r in records]
