"""Matsubara-sum pressures: the modified equilibrium term and its reference.

A *ladder* is the set of Matsubara frequencies xi_l = 2 pi k_B T_n l / hbar
of one plate temperature T_n. The modified equilibrium pressure is the sum
of one ladder per plate temperature, each pairing the reflection
coefficients of both plates. The standard equilibrium pressure at T is two
identical ladders at T, so both are built from the same block function and
coincide bit for bit when the permittivity does not depend on temperature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ConvergenceError
from .model import C, HBAR, K_B, SystemConfig
from .optics import slab_reflections_imag
from .quadrature import integrate_adaptive, sum_series

__all__ = [
    "MatsubaraTerm", "matsubara_terms", "pressure_eq_tilde", "pressure_eq",
    "pressure_eq_mean", "delta_eq_rel", "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-6
SERIES_REL_TOL = 1e-10
Y_SPAN = 60.0


@dataclass(frozen=True)
class MatsubaraTerm:
    n: int  # 1 for the T1 ladder, 2 for the T2 ladder
    l: int
    xi: float
    weight: float
    value: float  # contribution to the modified equilibrium pressure, Pa


def _ladder_temperature(config, n):
    return config.t1 if n == 1 else config.t2


def _term_integral(config, xi, static, tol):
    """Dimensionless k-integral of one Matsubara term, in y = 2 a q."""
    a = config.separation
    upper, lower = config.upper, config.lower
    y_lo = 2 * a * xi / C

    def integrand(y):
        q = y / (2 * a)
        e = np.exp(-y)
        total = np.zeros_like(y)
        for r1, r2 in zip(slab_reflections_imag(upper, xi, q, static),
                          slab_reflections_imag(lower, xi, q, static)):
            rr = r1 * r2
            total += rr * e / (1 - rr * e)
        return y * y * total

    res = integrate_adaptive(integrand, y_lo, y_lo + Y_SPAN, rel_tol=tol / 10, min_panels=4)
    if not res.converged:
        raise ConvergenceError("Matsubara k-integral",
                               {"xi": xi, "error": res.error_estimate, "value": res.value})
    return res.value


def _block(config, n, tol, record=None):
    """-k_B T_n/(2 pi) * sum'_l of the ladder-n terms, in Pa."""
    T = _ladder_temperature(config, n)
    a = config.separation
    xi1 = 2 * math.pi * K_B * T / HBAR
    prefactor = -K_B * T / (2 * math.pi) / (8 * a**3)
    floor_terms = int(math.ceil(5 * HBAR * C / (2 * a * K_B * T))) + 1

    def term(l):
        xi = l * xi1
        value = prefactor * _term_integral(config, xi, l == 0, tol)
        if record is not None:
            weight = 0.5 if l == 0 else 1.0
            record.append(MatsubaraTerm(n, l, xi, weight, weight * value))
        return value

    res = sum_series(term, rel_tol=SERIES_REL_TOL, consecutive=3,
                     floor_terms=floor_terms, halve_first=True)
    if not res.converged:
        raise ConvergenceError("Matsubara sum", {"T": T, "terms": res.evaluations})
    return res.value


def matsubara_terms(config, n=1, tol=DEFAULT_TOL, extra=0):
    """Weighted terms of ladder ``n`` as summed, plus ``extra`` further terms."""
    record = []
    _block(config, n, tol, record)
    T = _ladder_temperature(config, n)
    a = config.separation
    xi1 = 2 * math.pi * K_B * T / HBAR
    prefactor = -K_B * T / (2 * math.pi) / (8 * a**3)
    for l in range(len(record), len(record) + extra):
        xi = l * xi1
        record.append(MatsubaraTerm(n, l, xi, 1.0, prefactor * _term_integral(config, xi, False, tol)))
    return record


def pressure_eq_tilde(config: SystemConfig, tol=DEFAULT_TOL):
    """Modified equilibrium pressure on the lower plate (Pa, negative = attractive)."""
    _check_tol(tol)
    return _block(config, 1, tol) + _block(config, 2, tol)


def pressure_eq(a, T, plate_template, tol=DEFAULT_TOL):
    """Standard Lifshitz pressure with both plates at temperature ``T``."""
    _check_tol(tol)
    plate = plate_template.at(T)
    config = SystemConfig(plate, plate, float(a))
    return 2.0 * _block(config, 1, tol)


def pressure_eq_mean(a, T1, T2, plate_template, tol=DEFAULT_TOL):
    """Mean of the equilibrium pressures at T1 and at T2."""
    return 0.5 * (pressure_eq(a, T1, plate_template, tol) + pressure_eq(a, T2, plate_template, tol))


def delta_eq_rel(config, tol=DEFAULT_TOL, p_eq_tilde=None):
    """Relative deviation of the modified equilibrium term from the mean."""
    if p_eq_tilde is None:
        p_eq_tilde = pressure_eq_tilde(config, tol)
    mean = pressure_eq_mean(config.separation, config.t1, config.t2, config.upper, tol)
    return (p_eq_tilde - mean) / mean


def _check_tol(tol):
    if not 0 < tol <= 1e-2:
        raise ConfigurationError(f"tolerance must lie in (0, 1e-2], got {tol}")
