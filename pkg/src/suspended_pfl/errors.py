"""Exception types raised across the package."""

from __future__ import annotations

import numpy as np


class NonPositiveParameter(ValueError):
    """A physical constant that must be strictly positive is not."""

    def __init__(self, name: str, value: float):
        super().__init__(f"parameter {name!r} must be > 0, got {value!r}")
        self.name = name
        self.value = value


class SingularConfiguration(ArithmeticError):
    """The inertia matrix lost positive definiteness (eigenvalue below the floor)."""


class IllConditioned(ArithmeticError):
    """The output inertia map is too poorly conditioned to invert."""

    def __init__(self, cond: float):
        super().__init__(f"condition number {cond:.3e} exceeds limit")
        self.cond = cond


class CouplingSingular(ArithmeticError):
    """The actuated-to-passive coupling matrix is (numerically) singular."""

    def __init__(self, det: float):
        super().__init__(f"|det(lambda_c G)| = {abs(det):.3e} below floor")
        self.det = det


class NotAnEquilibrium(ValueError):
    def __init__(self, residual: float):
        super().__init__(f"closed-loop vector field norm {residual:.3e} at linearization point")
        self.residual = residual


class RunAborted(RuntimeError):
    """A simulation stopped because the controller or the dynamics failed."""

    def __init__(self, t: float, q: np.ndarray, dq: np.ndarray, cause: Exception):
        super().__init__(f"run aborted at t={t:.4f} s: {cause}")
        self.t = t
        self.q = np.array(q)
        self.dq = np.array(dq)
        self.cause = cause


class ParseError(ValueError):
    def __init__(self, reason: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")
        self.line = line
        self.reason = reason


class ConfigValidationError(ValueError):
    """A parsed scenario is syntactically fine but semantically invalid."""
