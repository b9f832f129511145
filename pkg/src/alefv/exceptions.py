"""Exception hierarchy for the solver.

Numerical failures carry enough context (cell index, state, suggested
remedy) to diagnose a run from the error message alone.
"""


class AlefvError(Exception):
    """Base class for all solver errors."""


class ConfigurationError(AlefvError):
    """Invalid user-facing configuration (bad order, CFL, scenario id, ...)."""


class SingularMatrixError(AlefvError):
    """A small dense system could not be solved to working precision."""


class MeshTanglingError(AlefvError):
    """A node update produced a non-positive cell width."""

    def __init__(self, cell, width, dt):
        self.cell = cell
        self.width = width
        self.dt = dt
        super().__init__(
            f"mesh tangling in cell {cell}: width {width:.3e} after node update; "
            f"retry with dt <= {0.5 * dt:.3e}"
        )


class ReconstructionError(AlefvError):
    """WENO stencil system failed (degenerate mesh geometry)."""


class InadmissibleStateError(AlefvError):
    """A state left the admissible set (negative density/pressure, |v| >= 1, ...)."""

    def __init__(self, message, where=None, state=None):
        self.where = where
        self.state = state
        if where is not None:
            message = f"{message} (at {where})"
        super().__init__(message)


class PredictorInitError(AlefvError):
    """Reconstructed node values were inadmissible when seeding the predictor."""


class PredictorDivergenceError(AlefvError):
    """The element-local predictor iteration did not converge within its cap."""


class ElementInversionError(AlefvError):
    """The space-time element mapping lost positivity of x_xi."""


class StiffSolveError(AlefvError):
    """Newton iteration on an implicit nodal source system diverged."""

    def __init__(self, message, state=None):
        self.state = state
        super().__init__(message)


class PathStateError(AlefvError):
    """An intermediate state on the Osher integration path was inadmissible."""


class VacuumError(AlefvError):
    """The exact Riemann solver detected vacuum generation (unsupported)."""
