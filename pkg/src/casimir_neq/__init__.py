"""Nonequilibrium Casimir pressure between similar metal plates of finite thickness."""

__version__ = "0.1.0"

from .equilibrium import (delta_eq_rel, matsubara_terms, pressure_eq, pressure_eq_mean,
                          pressure_eq_tilde)
from .errors import CasimirError, ConfigurationError, ConvergenceError, NoZeroCrossing
from .model import (MATERIALS, MaterialParams, PermittivityModel, PlateSpec, SystemConfig,
                    gamma_at, permittivity_imag, permittivity_real, theta)
from .noneq import (PressureBreakdown, blackbody_offset, delta_pneq, pressure_ideal,
                    pressure_neq, pressure_neq_upper)
from .optics import Polarization, reflection_imag, reflection_real
from .scan import ScanRecord, ScanRequest, find_zero_thickness, run_point, scan

__all__ = [
    "__version__", "MATERIALS", "MaterialParams", "PermittivityModel", "PlateSpec",
    "SystemConfig", "gamma_at", "permittivity_imag", "permittivity_real", "theta",
    "Polarization", "reflection_imag", "reflection_real", "matsubara_terms",
    "pressure_eq_tilde", "pressure_eq", "pressure_eq_mean", "delta_eq_rel",
    "PressureBreakdown", "delta_pneq", "pressure_neq", "pressure_neq_upper",
    "pressure_ideal", "blackbody_offset", "ScanRequest", "ScanRecord", "run_point",
    "scan", "find_zero_thickness", "CasimirError", "ConfigurationError",
    "ConvergenceError", "NoZeroCrossing",
]
