"""Wave numbers and reflection coefficients of a metallic slab in vacuum.

Two frequency axes are covered. On the imaginary axis (Matsubara
frequencies) every quantity is real. On the real axis the vacuum normal
wave number ``p`` is real for propagating waves and ``+i|p|`` for evanescent
ones; the medium wave number ``u`` is always taken on the branch with
``Im u >= 0`` so that ``exp(2i d u)`` decays through the slab.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .model import C, permittivity_real

__all__ = [
    "Polarization", "SpectralPoint", "WaveNumbersImag", "WaveNumbersReal",
    "wave_numbers_imag", "wave_numbers_real", "fresnel", "slab",
    "reflection_imag", "reflection_real", "slab_reflections_imag",
    "slab_reflections_real", "decaying_sqrt", "one_minus_exp",
]


class Polarization(str, enum.Enum):
    TM = "TM"
    TE = "TE"


class SpectralPoint(NamedTuple):
    axis: str  # "imaginary" or "real"
    frequency: float
    k_perp: float


class WaveNumbersImag(NamedTuple):
    q: np.ndarray
    v: np.ndarray


class WaveNumbersReal(NamedTuple):
    p: np.ndarray
    u: np.ndarray


def decaying_sqrt(z):
    """Square root with Im >= 0 (and Re >= 0 on the real line)."""
    u = np.sqrt(np.asarray(z, dtype=complex))
    return np.where(u.imag < 0, -u, u)


def wave_numbers_imag(xi, k_perp, eps):
    k2 = np.asarray(k_perp, dtype=float) ** 2
    k0 = np.asarray(xi, dtype=float) / C
    return WaveNumbersImag(np.sqrt(k2 + k0**2), np.sqrt(k2 + eps * k0**2))


def wave_numbers_real(omega, k_perp, eps):
    k0 = np.asarray(omega, dtype=float) / C
    k_perp = np.asarray(k_perp, dtype=float)
    rad = k0**2 - k_perp**2
    root = np.sqrt(np.abs(rad))
    p = np.where(rad >= 0, root + 0j, 1j * root)
    u = decaying_sqrt(eps * k0**2 - k_perp**2)
    return WaveNumbersReal(p, u)


def fresnel(pol, eps, kz_vac, kz_med):
    """Semispace Fresnel coefficient, same algebra on both frequency axes."""
    if Polarization(pol) is Polarization.TM:
        return (eps * kz_vac - kz_med) / (eps * kz_vac + kz_med)
    return (kz_vac - kz_med) / (kz_vac + kz_med)


def slab(r, phase):
    """Slab coefficient from the semispace one and the round-trip factor.

    ``phase`` is exp(-2 d v) on the imaginary axis, exp(2i d u) on the real one.
    """
    return r * (1 - phase) / (1 - r * r * phase)


def one_minus_exp(z):
    """1 - exp(z) for complex z without cancellation near z = 0."""
    x = np.maximum(z.real, -690.0)
    y = z.imag
    with np.errstate(under="ignore"):
        return -(np.expm1(x) * np.cos(y) - 2 * np.sin(0.5 * y) ** 2 + 1j * np.exp(x) * np.sin(y))


def _slab_stable(num, den_term, one_minus_phase, complement=False):
    """Slab coefficient for r = (num - t)/(num + t), ``t`` = ``den_term``.

    Same value as ``slab`` but written through 1 - r^2 = 4 num t/(num + t)^2
    and a precomputed 1 - phase. With ``complement`` it returns 1 - R,
    evaluated as (1 - r)(1 + r*phase)/(1 - r^2 phase) so that it keeps full
    relative accuracy when R is close to 1. The low-frequency cross terms
    between two nearly equal plates depend on that.
    """
    s = num + den_term
    r = (num - den_term) / s
    one_minus_r2 = 4 * num * den_term / (s * s)
    den = one_minus_r2 + r * r * one_minus_phase
    if complement:
        return (2 * den_term / s) * (1 + r * (1 - one_minus_phase)) / den
    return r * one_minus_phase / den


def slab_reflections_imag(plate, xi, q, static=False):
    """(R_TM, R_TE) of ``plate`` at imaginary frequency ``xi`` as functions of q.

    ``q`` is the vacuum wave number sqrt(k^2 + xi^2/c^2). With ``static``
    (the l = 0 term, xi = 0) the closed-form limits are used: a dissipative
    Drude metal gives R_TM = 1, R_TE = 0; the plasma model gives R_TM = 1 and
    a TE coefficient built from v0 = sqrt(k^2 + omega_p^2/c^2).
    """
    q = np.asarray(q, dtype=float)
    wp2 = plate.material.omega_p ** 2
    gamma = plate.gamma
    d = plate.thickness
    if static:
        one = np.ones_like(q)
        if gamma > 0:
            return one, np.zeros_like(q)
        v0 = np.sqrt(q**2 + wp2 / C**2)
        return one, _slab_stable(q, v0, -np.expm1(-2 * d * v0))
    # (eps - 1) xi^2 written without forming eps, exact for xi -> 0
    chi = wp2 * xi / (xi + gamma)
    eps = 1.0 + chi / xi**2
    v = np.sqrt(q**2 + chi / C**2)
    omp = -np.expm1(-2 * d * v)
    return _slab_stable(eps * q, v, omp), _slab_stable(q, v, omp)


def slab_reflections_real(plate, omega, p, complement=False):
    """(R_TM, R_TE) of ``plate`` at real frequency ``omega`` as functions of p.

    ``p`` is the complex vacuum normal wave number (real for propagating,
    +i*kappa for evanescent waves). With ``complement`` the pair
    (1 - R_TM, 1 - R_TE) is returned instead, accurate also where R ~ 1.
    """
    p = np.asarray(p, dtype=complex)
    eps = permittivity_real(plate.model, plate.material, omega, plate.temperature)
    k0 = omega / C
    u = decaying_sqrt(p * p + (eps - 1.0) * k0**2)
    omp = one_minus_exp(2j * plate.thickness * u)
    return (_slab_stable(eps * p, u, omp, complement),
            _slab_stable(p, u, omp, complement))


def reflection_imag(pol, l, xi, k_perp, plate):
    """Slab reflection coefficient at the Matsubara point (l, xi, k_perp)."""
    k_perp = np.asarray(k_perp, dtype=float)
    if l == 0:
        if xi != 0:
            raise ValueError("l = 0 requires xi = 0")
        q = k_perp
    else:
        if not xi > 0:
            raise ValueError("l > 0 requires xi > 0")
        q = np.sqrt(k_perp**2 + (xi / C) ** 2)
    r_tm, r_te = slab_reflections_imag(plate, xi, q, static=(l == 0))
    out = r_tm if Polarization(pol) is Polarization.TM else r_te
    return out if out.ndim else float(out)


def reflection_real(pol, omega, k_perp, plate):
    """Slab reflection coefficient at real frequency ``omega`` > 0."""
    if not omega > 0:
        raise ValueError("omega must be > 0")
    k0 = omega / C
    k_perp = np.asarray(k_perp, dtype=float)
    rad = k0**2 - k_perp**2
    p = np.where(rad >= 0, np.sqrt(np.abs(rad)) + 0j, 1j * np.sqrt(np.abs(rad)))
    r_tm, r_te = slab_reflections_real(plate, omega, p)
    out = r_tm if Polarization(pol) is Polarization.TM else r_te
    return out if out.ndim else complex(out)
