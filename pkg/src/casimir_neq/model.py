"""Constants, metal parameters and the dielectric response of the plates.

Everything here works in SI units. Energies (plasma frequency, relaxation
parameter) are stored in eV as they are usually quoted and converted to
angular frequencies on access.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ZeroFrequencyLimit

__all__ = [
    "PhysicalConstants", "CONSTANTS", "HBAR", "C", "K_B", "SIGMA_SB", "EV",
    "MaterialParams", "MATERIALS", "PermittivityModel", "PlateSpec",
    "SystemConfig", "gamma_at", "permittivity_imag", "permittivity_real",
    "theta",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34
    c: float = 2.99792458e8
    k_B: float = 1.380649e-23
    sigma_SB: float = 5.670374419e-8
    eV_to_J: float = 1.602176634e-19


CONSTANTS = PhysicalConstants()
HBAR = CONSTANTS.hbar
C = CONSTANTS.c
K_B = CONSTANTS.k_B
SIGMA_SB = CONSTANTS.sigma_SB
EV = CONSTANTS.eV_to_J


@dataclass(frozen=True)
class MaterialParams:
    """Drude parameters of a metal.

    Parameters
    ----------
    name : str
    plasma_ev : float
        hbar * omega_p in eV.
    gamma_table : tuple of (float, float)
        (temperature in K, hbar * gamma in eV), temperatures strictly increasing.
    """

    name: str
    plasma_ev: float
    gamma_table: tuple = ()

    def __post_init__(self):
        table = tuple((float(t), float(g)) for t, g in self.gamma_table)
        object.__setattr__(self, "gamma_table", table)
        if not self.plasma_ev > 0:
            raise ConfigurationError(f"{self.name}: plasma energy must be > 0")
        temps = [t for t, _ in table]
        if any(t1 >= t2 for t1, t2 in zip(temps, temps[1:])):
            raise ConfigurationError(f"{self.name}: gamma table temperatures must increase")
        if any(t <= 0 for t in temps) or any(g < 0 for _, g in table):
            raise ConfigurationError(f"{self.name}: gamma table needs T > 0 and gamma >= 0")

    @property
    def omega_p(self):
        """Plasma frequency in rad/s."""
        return self.plasma_ev * EV / HBAR

    def scaled(self, factor):
        """Copy with every tabulated gamma multiplied by ``factor``."""
        table = tuple((t, g * factor) for t, g in self.gamma_table)
        return dataclasses.replace(self, name=f"{self.name}*{factor:g}", gamma_table=table)


MATERIALS = {
    "Au": MaterialParams("Au", 9.0, ((300.0, 0.035), (500.0, 0.058))),
    "Ti": MaterialParams("Ti", 2.51, ((300.0, 0.047), (500.0, 0.078))),
}


def gamma_at(material, T):
    """Relaxation parameter in rad/s at temperature ``T``.

    Piecewise linear in T over the table with linear extrapolation beyond
    its ends. Tabulated temperatures return the stored value unchanged.
    """
    table = material.gamma_table
    if not table:
        raise ConfigurationError(f"{material.name}: empty gamma table")
    if not T > 0:
        raise ConfigurationError(f"temperature must be > 0, got {T}")
    temps = [t for t, _ in table]
    if T in temps:
        g_ev = table[temps.index(T)][1]
    elif len(table) == 1:
        g_ev = table[0][1]
    else:
        i = int(np.clip(np.searchsorted(temps, T) - 1, 0, len(temps) - 2))
        (t0, g0), (t1, g1) = table[i], table[i + 1]
        g_ev = g0 + (g1 - g0) * (T - t0) / (t1 - t0)
    return g_ev * EV / HBAR


@dataclass(frozen=True)
class PermittivityModel:
    """Which dielectric response a plate uses.

    ``kind`` is one of ``"drude"`` (gamma follows the plate temperature),
    ``"drude-fixed"`` (gamma frozen at ``t_ref``) or ``"plasma"``.
    """

    kind: str = "drude"
    t_ref: float | None = None

    def __post_init__(self):
        if self.kind not in ("drude", "drude-fixed", "plasma"):
            raise ConfigurationError(f"unknown permittivity model {self.kind!r}")
        if self.kind == "drude-fixed":
            if self.t_ref is None or not self.t_ref > 0:
                raise ConfigurationError("drude-fixed needs a reference temperature > 0")
        elif self.t_ref is not None:
            raise ConfigurationError(f"{self.kind} takes no reference temperature")

    @classmethod
    def drude(cls):
        return cls("drude")

    @classmethod
    def drude_fixed(cls, t_ref):
        return cls("drude-fixed", float(t_ref))

    @classmethod
    def plasma(cls):
        return cls("plasma")

    @classmethod
    def parse(cls, text):
        """Parse ``drude``, ``plasma`` or ``drude-fixed:<T>``."""
        text = text.strip().lower()
        if text.startswith("drude-fixed"):
            _, _, t = text.partition(":")
            try:
                return cls.drude_fixed(float(t.rstrip("k")))
            except ValueError:
                raise ConfigurationError(f"bad model {text!r}, expected drude-fixed:<T>") from None
        return cls(text)

    @property
    def temperature_dependent(self):
        return self.kind == "drude"

    def gamma(self, material, T):
        if self.kind == "plasma":
            return 0.0
        return gamma_at(material, self.t_ref if self.kind == "drude-fixed" else T)

    def __str__(self):
        if self.kind == "drude-fixed":
            return f"drude-fixed:{self.t_ref:g}"
        return self.kind


def permittivity_imag(model, material, xi, T):
    """Permittivity at imaginary frequency ``i*xi`` (rad/s), always >= 1.

    Raises ZeroFrequencyLimit for xi == 0, where a metal's permittivity
    diverges.
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise ValueError("xi must be >= 0")
    if np.any(xi == 0):
        raise ZeroFrequencyLimit("permittivity diverges at xi = 0; use the l = 0 limits")
    wp = material.omega_p
    eps = 1.0 + wp**2 / (xi * (xi + model.gamma(material, T)))
    return eps if eps.ndim else float(eps)


def permittivity_real(model, material, omega, T):
    """Complex permittivity at real frequency ``omega`` > 0 (rad/s)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be > 0 on the real axis")
    wp = material.omega_p
    eps = 1.0 - wp**2 / (omega * (omega + 1j * model.gamma(material, T)))
    return eps if eps.ndim else complex(eps)


def theta(omega, T):
    """Mean thermal photon number 1/(exp(hbar*omega/k_B T) - 1)."""
    x = HBAR * np.asarray(omega, dtype=float) / (K_B * T)
    with np.errstate(divide="ignore"):
        out = np.where(x > 700.0, 0.0, 1.0 / np.expm1(np.minimum(x, 700.0)))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class PlateSpec:
    """One plate: material, permittivity model, thickness (m), temperature (K)."""

    material: MaterialParams
    model: PermittivityModel
    thickness: float
    temperature: float

    def __post_init__(self):
        if not self.thickness > 0:
            raise ConfigurationError(f"plate thickness must be > 0, got {self.thickness}")
        if not self.temperature > 0:
            raise ConfigurationError(f"plate temperature must be > 0, got {self.temperature}")

    @property
    def gamma(self):
        return self.model.gamma(self.material, self.temperature)

    def at(self, T):
        return dataclasses.replace(self, temperature=float(T))


@dataclass(frozen=True)
class SystemConfig:
    """Two similar plates separated by ``separation`` (m).

    The upper plate sits at the environment temperature T1, the lower one at T2.
    """

    upper: PlateSpec
    lower: PlateSpec
    separation: float

    def __post_init__(self):
        if not self.separation > 0:
            raise ConfigurationError(f"separation must be > 0, got {self.separation}")
        if self.upper.material != self.lower.material or self.upper.model != self.lower.model:
            raise ConfigurationError("both plates must share material and permittivity model")
        if self.upper.thickness != self.lower.thickness:
            raise ConfigurationError("both plates must have the same thickness")

    @classmethod
    def similar(cls, material, model, thickness, separation, t1=300.0, t2=500.0):
        if isinstance(material, str):
            try:
                material = MATERIALS[material]
            except KeyError:
                raise ConfigurationError(f"unknown material {material!r}") from None
        if isinstance(model, str):
            model = PermittivityModel.parse(model)
        upper = PlateSpec(material, model, float(thickness), float(t1))
        return cls(upper, upper.at(t2), float(separation))

    @property
    def t1(self):
        return self.upper.temperature

    @property
    def t2(self):
        return self.lower.temperature

    @property
    def material(self):
        return self.upper.material

    @property
    def model(self):
        return self.upper.model

    @property
    def thickness(self):
        return self.upper.thickness

    def replace(self, *, separation=None, thickness=None, t1=None, t2=None,
                model=None, material=None):
        """Copy with some parameters changed; both plates stay similar."""
        return SystemConfig.similar(
            material if material is not None else self.material,
            model if model is not None else self.model,
            thickness if thickness is not None else self.thickness,
            separation if separation is not None else self.separation,
            t1 if t1 is not None else self.t1,
            t2 if t2 is not None else self.t2,
        )

    def swapped(self):
        return self.replace(t1=self.t2, t2=self.t1)
