"""Exception types shared across the solver."""


class BloodFVError(Exception):
    """Base class for solver errors."""


class ZeroAreaError(BloodFVError, ValueError):
    """A state with non-positive cross-section was passed where A > 0 is required."""


class PositivityError(BloodFVError, RuntimeError):
    """A numerical update produced a non-positive or non-finite cell state."""

    def __init__(self, cell, x, t, value):
        self.cell = cell
        self.x = x
        self.t = t
        self.value = value
        super().__init__(
            f"positivity lost in cell {cell} (x = {x:.6g} m) at t = {t:.6g} s: A = {value!r}"
        )


class ConvergenceError(BloodFVError, RuntimeError):
    """An iterative scalar solve failed to converge."""


class ConfigError(BloodFVError, ValueError):
    """Invalid configuration file; message names the offending key path."""


class SupercriticalWarning(UserWarning):
    """A subcritical boundary closure produced a supercritical boundary state."""
