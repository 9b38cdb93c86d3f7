"""Exception hierarchy shared by the numerical engines and the CLI."""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(CasimirError, ValueError):
    """Invalid material, plate, geometry or config-file input."""


class ZeroFrequencyLimit(CasimirError, ArithmeticError):
    """Raised when a permittivity is requested at exactly zero frequency.

    The permittivity of a metal diverges there, so callers have to switch to
    the closed-form zero-frequency reflection coefficients instead.
    """


class ConvergenceError(CasimirError, RuntimeError):
    """A quadrature or series did not reach the requested tolerance.

    ``where`` names the failing integral, ``detail`` carries the coordinates
    and error estimate of the offending piece.
    """

    def __init__(self, where, detail=None):
        self.where = where
        self.detail = detail or {}
        extra = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                          for k, v in self.detail.items())
        super().__init__(f"{where} did not converge" + (f" ({extra})" if extra else ""))


class NoZeroCrossing(CasimirError):
    """The root bracket does not contain a sign change."""
