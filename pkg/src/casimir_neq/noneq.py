"""Real-frequency nonequilibrium term and assembly of the total pressure.

The proper nonequilibrium term is a double integral over real frequency
omega and the normal vacuum wave number. It is split into a propagating
sector (real p in [0, omega/c]) and an evanescent sector (p = i*kappa,
kappa > 0). The outer integral runs over s = ln x with
x = hbar*omega/(k_B*T_max), which resolves the low-frequency structure of
thin metallic films without an excessive number of panels.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .equilibrium import DEFAULT_TOL, _check_tol, pressure_eq_mean, pressure_eq_tilde
from .errors import ConvergenceError
from .model import C, HBAR, K_B, SIGMA_SB, theta
from .optics import one_minus_exp, slab_reflections_real
from .quadrature import integrate_adaptive

__all__ = [
    "PressureBreakdown", "delta_pneq", "pressure_neq", "pressure_neq_upper",
    "pressure_ideal", "blackbody_offset", "thermal_cutoff", "X_MIN_PER_TOL",
    "propagating_integrand", "evanescent_integrand",
]

# lower frequency cut in x = hbar*omega/(k_B*T_max), per unit tolerance; the
# dropped low-frequency part scales like x_min
X_MIN_PER_TOL = 1e-2
OUTER_PANELS = 24
INNER_LOG_PANELS = 32
KAPPA_MIN_FACTOR = 1e-6
KAPPA_CUT = 40.0
# temperatures closer than this are treated as equal
DEGENERATE_DT = 1e-3


@dataclass(frozen=True)
class PressureBreakdown:
    p_neq: float
    p_eq_tilde: float
    delta_p_neq: float
    delta_prop: float
    delta_evan: float
    p_eq_mean: float
    delta_eq_rel: float
    blackbody_offset: float
    p_ideal: float
    ratio_delta_over_total: float

    def as_dict(self):
        return asdict(self)


def pressure_ideal(a):
    """Zero-temperature pressure between ideal metal plates, -pi^2 hbar c/(240 a^4)."""
    if not a > 0:
        raise ValueError("separation must be > 0")
    return -math.pi**2 * HBAR * C / (240.0 * a**4)


def blackbody_offset(T1, T2):
    return 2.0 * SIGMA_SB / (3.0 * C) * (T2**4 - T1**4)


def thermal_cutoff(T1, T2, rel=1e-14):
    """Upper limit in x = hbar*omega/(k_B*T_max) for the frequency integral.

    Chosen where x^3 |Theta(T1) - Theta(T2)| has dropped below ``rel`` times
    its maximum; the x^3 accounts for the growth of the wave-number phase
    space with frequency.
    """
    t_max = max(T1, T2)
    x = np.linspace(1e-3, 200.0, 200001)
    w = x * K_B * t_max / HBAR
    g = x**3 * np.abs(theta(w, T1) - theta(w, T2))
    peak = g.max()
    beyond = np.nonzero((g < rel * peak) & (x > x[np.argmax(g)]))[0]
    return float(x[beyond[0]]) if beyond.size else 200.0


def _complements(config, omega, p):
    # 1 - R for both plates; near R = 1 the cross terms between two nearly
    # equal plates need 1 - R at full relative accuracy
    return (slab_reflections_real(config.upper, omega, p, complement=True),
            slab_reflections_real(config.lower, omega, p, complement=True))


def _denominator_sq(d1, d2, e, one_minus_e):
    # |1 - R1 R2 e|^2 with R = 1 - d
    return np.abs(one_minus_e + e * (d1 + d2 - d1 * d2)) ** 2


def propagating_integrand(config, omega, p):
    """p^2 * sum_alpha (|R(T2)|^2 - |R(T1)|^2) / |D|^2 for real p in [0, omega/c]."""
    p = np.asarray(p, dtype=float)
    z = 2j * p * config.separation
    e, one_minus_e = np.exp(z), one_minus_exp(z)
    total = np.zeros_like(p)
    for d1, d2 in zip(*_complements(config, omega, p + 0j)):
        # |1 - d2|^2 - |1 - d1|^2
        num = 2 * (d1.real - d2.real) + (np.abs(d2) ** 2 - np.abs(d1) ** 2)
        total += num / _denominator_sq(d1, d2, e, one_minus_e)
    return p * p * total


def evanescent_integrand(config, omega, kappa):
    """kappa^2 e^{-2 a kappa} * sum_alpha Im(R(T1) conj R(T2)) / |D|^2."""
    kappa = np.asarray(kappa, dtype=float)
    x = -2 * config.separation * kappa
    decay, one_minus_decay = np.exp(x), -np.expm1(x)
    total = np.zeros_like(kappa)
    for d1, d2 in zip(*_complements(config, omega, 1j * kappa)):
        # Im((1 - d1) conj(1 - d2))
        num = d2.imag - d1.imag + (d1 * np.conj(d2)).imag
        total += num / _denominator_sq(d1, d2, decay, one_minus_decay)
    return kappa * kappa * decay * total


def _inner_propagating(config, omega, tol):
    a = config.separation
    k0 = omega / C
    panels = max(1, int(math.ceil(k0 / (math.pi / (4 * a)))))
    res = integrate_adaptive(lambda p: propagating_integrand(config, omega, p), 0.0, k0,
                             rel_tol=tol, min_panels=panels, scale="l1")
    if not res.converged:
        raise ConvergenceError("propagating k-integral",
                               {"omega": omega, "error": res.error_estimate})
    return res.value


def _inner_evanescent(config, omega, tol):
    # kappa spans many decades at low omega (thin-film TE peak far below
    # 1/a), so integrate over t = ln(kappa); kappa^3 suppresses t -> -inf
    a = config.separation
    t_lo = math.log(KAPPA_MIN_FACTOR / (2 * a))
    t_hi = math.log(KAPPA_CUT / (2 * a))

    def f(t):
        kappa = np.exp(t)
        return kappa * evanescent_integrand(config, omega, kappa)

    res = integrate_adaptive(f, t_lo, t_hi, rel_tol=tol, min_panels=INNER_LOG_PANELS, scale="l1")
    # remaining tail beyond the cut decays like kappa^2 exp(-2 a kappa)
    tail = float(evanescent_integrand(config, omega, np.array([KAPPA_CUT / (2 * a)]))[0]) / (2 * a)
    if not res.converged or abs(tail) > tol * abs(res.value):
        raise ConvergenceError("evanescent k-integral",
                               {"omega": omega, "error": res.error_estimate, "tail": tail})
    return res.value


def _sector(config, inner, tol, x_min, x_max):
    t_max = max(config.t1, config.t2)
    w_scale = K_B * t_max / HBAR

    def outer(s):
        out = np.empty_like(s)
        for i, si in enumerate(s):
            omega = math.exp(si) * w_scale
            d_theta = theta(omega, config.t1) - theta(omega, config.t2)
            out[i] = omega * d_theta * inner(config, omega, tol / 10) if d_theta else 0.0
        return out

    res = integrate_adaptive(outer, math.log(x_min), math.log(x_max), rel_tol=tol,
                             min_panels=OUTER_PANELS, scale="l1")
    if not res.converged:
        raise ConvergenceError(f"{inner.__name__.strip('_')} frequency integral",
                               {"error": res.error_estimate, "value": res.value})
    return res.value


def delta_pneq(config, tol=DEFAULT_TOL, x_min=None, x_max=None):
    """Proper nonequilibrium pressure, returned as (propagating, evanescent) in Pa.

    Identically zero when both plates have the same permittivity, which
    covers temperature-independent models and T1 == T2. ``x_min`` and
    ``x_max`` bound the frequency integral in units of k_B*T_max/hbar;
    by default ``x_min`` = tol/100 and ``x_max`` comes from thermal_cutoff.
    """
    _check_tol(tol)
    if (abs(config.t1 - config.t2) < DEGENERATE_DT
            or config.upper.gamma == config.lower.gamma):
        return 0.0, 0.0
    if x_min is None:
        x_min = X_MIN_PER_TOL * tol
    if x_max is None:
        x_max = thermal_cutoff(config.t1, config.t2)
    prop = _sector(config, _inner_propagating, tol, x_min, x_max)
    evan = _sector(config, _inner_evanescent, tol, x_min, x_max)
    return HBAR / (4 * math.pi**2) * prop, -HBAR / (2 * math.pi**2) * evan


def pressure_neq(config, tol=DEFAULT_TOL):
    """Full pressure breakdown for the lower plate."""
    p_tilde = pressure_eq_tilde(config, tol)
    prop, evan = delta_pneq(config, tol)
    delta = prop + evan
    mean = pressure_eq_mean(config.separation, config.t1, config.t2, config.upper, tol)
    total = p_tilde + delta
    return PressureBreakdown(
        p_neq=total,
        p_eq_tilde=p_tilde,
        delta_p_neq=delta,
        delta_prop=prop,
        delta_evan=evan,
        p_eq_mean=mean,
        delta_eq_rel=(p_tilde - mean) / mean,
        blackbody_offset=blackbody_offset(config.t1, config.t2),
        p_ideal=pressure_ideal(config.separation),
        ratio_delta_over_total=delta / abs(total),
    )


def pressure_neq_upper(config, tol=DEFAULT_TOL, breakdown=None):
    """Pressure on the upper plate: lower-plate pressure plus the blackbody term."""
    if breakdown is None:
        breakdown = pressure_neq(config, tol)
    return breakdown.p_neq + breakdown.blackbody_offset
