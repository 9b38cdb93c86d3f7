"""INI-style run configuration and unit parsing at the CLI boundary.

Example::

    [system]
    material = Au
    model = drude
    thickness = 20nm
    separation = 1um
    t1 = 300
    t2 = 500

    [tolerances]
    tol = 1e-6
    tol_d = 0.05nm

    [scan]
    axis = separation
    grid = 0.5um:2um:16        ; start:stop:count, or a comma list
    models = plasma, drude
    outputs = p_neq, p_neq_over_p0
    thickness = 20nm, 1um      ; optional extra column groups
    materials = Au, Ti

    [find-zero]
    d_lo = 20nm
    d_hi = 30nm

    [material.Cu]
    plasma_ev = 8.9
    gamma_mev = 300:35, 500:55
"""

from __future__ import annotations

import configparser
import re
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .model import MATERIALS, MaterialParams

__all__ = ["parse_length", "parse_grid", "load_config", "fixture_names", "RunConfig"]

_UNITS = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "μm": 1e-6, "nm": 1e-9}
_LENGTH = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zµμ]+)\s*$")


def parse_length(text):
    """``"20nm"`` -> 2e-8. A unit suffix (nm, um/μm, mm, m) is required."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _LENGTH.match(str(text))
    if not m or m.group(2) not in _UNITS:
        raise ConfigurationError(f"bad length {text!r}; use an explicit unit like 20nm or 0.5um")
    return float(m.group(1)) * _UNITS[m.group(2)]


def parse_grid(text):
    """``"0.5um:2um:7"`` (inclusive linspace) or ``"0.5um, 1um, 2um"``."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"bad grid {text!r}, expected start:stop:count")
        start, stop = parse_length(parts[0]), parse_length(parts[1])
        try:
            n = int(parts[2])
        except ValueError:
            raise ConfigurationError(f"bad grid count in {text!r}") from None
        return tuple(float(x) for x in np.linspace(start, stop, n))
    return tuple(parse_length(p) for p in _split(text))


def _split(text):
    return [p.strip() for p in text.split(",") if p.strip()]


def _parse_gamma(text):
    table = []
    for item in _split(text):
        t, sep, g = item.partition(":")
        if not sep:
            raise ConfigurationError(f"bad gamma entry {item!r}, expected T:gamma_meV")
        table.append((float(t), float(g) / 1000.0))
    return tuple(table)


class RunConfig(dict):
    """Flat mapping of parsed settings plus the material database in use."""

    def __init__(self, *args, materials=None, **kw):
        super().__init__(*args, **kw)
        self.materials = dict(materials or MATERIALS)


def fixture_names():
    return sorted(p.name[:-4] for p in resources.files("casimir_neq.fixtures").iterdir()
                  if p.name.endswith(".ini"))


def _read_text(source):
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    if source in fixture_names():
        return resources.files("casimir_neq.fixtures").joinpath(f"{source}.ini").read_text("utf-8")
    raise ConfigurationError(f"config {source!r} is neither a file nor a shipped fixture "
                             f"({', '.join(fixture_names())})")


def load_config(source=None, text=None):
    """Parse a config file (or shipped fixture name) into a RunConfig."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        if text is None and source is not None:
            text = _read_text(source)
        if text:
            parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse config: {exc}") from None
    cfg = RunConfig()
    for section in parser.sections():
        if section.startswith("material."):
            name = section.split(".", 1)[1]
            sec = parser[section]
            try:
                cfg.materials[name] = MaterialParams(
                    name, float(sec["plasma_ev"]), _parse_gamma(sec.get("gamma_mev", "")))
            except (KeyError, ValueError) as exc:
                if isinstance(exc, ConfigurationError):
                    raise
                raise ConfigurationError(f"[{section}]: {exc}") from None
    known = {
        "system": ("material", "model", "thickness", "separation", "t1", "t2"),
        "tolerances": ("tol", "tol_d"),
        "scan": ("axis", "grid", "models", "outputs", "thickness", "separation",
                 "materials", "workers"),
        "find-zero": ("d_lo", "d_hi"),
    }
    for section, keys in known.items():
        if not parser.has_section(section):
            continue
        for key, value in parser[section].items():
            if key not in keys:
                raise ConfigurationError(f"unknown key {key!r} in [{section}]")
            cfg[f"{section}.{key}"] = value
    for section in parser.sections():
        if section not in known and not section.startswith("material."):
            raise ConfigurationError(f"unknown section [{section}]")
    return cfg
