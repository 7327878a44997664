"""Exception types shared across the package."""


class SqgError(Exception):
    """Base class for all package errors."""


class ParameterError(SqgError, ValueError):
    """A scalar parameter is outside its admissible range."""


class InvalidFieldError(SqgError, ValueError):
    """Field data contains non-finite entries or has the wrong shape."""


class AsymmetryError(SqgError, ValueError):
    """Spectral coefficients violate Hermitian symmetry.

    Carries the offending mode index and the measured asymmetry.
    """

    def __init__(self, mode, asymmetry, tolerance):
        self.mode = tuple(int(m) for m in mode)
        self.asymmetry = float(asymmetry)
        self.tolerance = float(tolerance)
        super().__init__(
            f"Hermitian symmetry violated at mode {self.mode}: "
            f"|F(-m) - conj(F(m))| = {self.asymmetry:.3e} > {self.tolerance:.3e}"
        )


class BlowUpError(SqgError, ArithmeticError):
    """The solution developed non-finite coefficients."""

    def __init__(self, t, step_count, mode):
        self.t = float(t)
        self.step_count = int(step_count)
        self.mode = tuple(int(m) for m in mode)
        super().__init__(
            f"non-finite coefficients at t = {self.t:.6g} "
            f"(step {self.step_count}), largest offending mode {self.mode}"
        )


class BudgetError(SqgError, RuntimeError):
    """A step-count or problem-size budget was exceeded."""


class AccuracyError(SqgError, RuntimeError):
    """A quadrature or certification step failed to reach its tolerance."""


class ConstructionError(SqgError, RuntimeError):
    """An object could not be built with the required properties."""


class ConfigError(SqgError, ValueError):
    """Invalid run configuration.

    ``line`` is the 1-based line number in the config text when the error
    can be attributed to a specific line, else None.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SnapshotFormatError(SqgError, ValueError):
    """A snapshot file has a bad magic number, version, or payload size."""


class RangeError(SqgError, ValueError):
    """A lookup argument falls outside the tabulated range."""


class DomainError(SqgError, ValueError):
    """Data is outside the mathematical domain of an operation."""
