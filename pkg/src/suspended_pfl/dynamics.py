"""Manipulator-form dynamics  M(q) q̈ + C(q, q̇) q̇ + g(q) = J_u(q)ᵀ u + f_ext.

Two models share the same assembly: the full 5-DOF chain and its planar
double-pendulum restriction. Cables are uniform rods; a rod between points a
and b whose velocity varies linearly along it has kinetic energy
``m/6 (|v_a|² + v_a·v_b + |v_b|²)``, which gives the lumped coefficients in
:class:`_Chain`. C comes from Christoffel symbols of the analytic ∂M/∂q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _numeric
from .errors import SingularConfiguration
from .model import ModelParams, PlanarParams, planar_reduction, validate
from .oracle import lagrangian_oracle

EIG_FLOOR = 1e-10


@dataclass
class DynamicsTerms:
    M: np.ndarray
    C: np.ndarray
    g: np.ndarray
    J_u: np.ndarray
    dq: np.ndarray

    @property
    def Cdq(self) -> np.ndarray:
        return self.C @ self.dq


class _Chain:
    """Upper cable + platform body + lower cable + load point."""

    ndof: int
    ny: int
    nc: int
    nu: int
    planar: bool

    def __init__(self, l1, l2, m_c1, m_p, m_c2, m_l, inertia, g0):
        self.l1, self.l2 = float(l1), float(l2)
        self.coef = np.array([
            m_c1 / 3.0 + m_p + m_c2 / 3.0,  # a_pp
            m_c2 / 3.0 + m_l,  # a_ll
            m_c2 / 6.0,  # a_pl
            m_c1 / 2.0 + m_p + m_c2 / 2.0,  # b_p
            m_c2 / 2.0 + m_l,  # b_l
            float(g0),
        ])
        self.inertia = np.ascontiguousarray(np.atleast_2d(inertia), dtype=float)

    @property
    def up(self) -> int:
        return 1 if self.planar else 2

    def _q(self, q) -> np.ndarray:
        q = np.ascontiguousarray(q, dtype=float)
        if q.shape != (self.ndof,):
            raise ValueError(f"expected {self.ndof} coordinates, got shape {q.shape}")
        return q

    def kinematics(self, q):
        """(p, l, Jp, Jl, Jw, dJp, dJl, dJw); see ``_kinematics`` for the layout."""
        return _numeric.kinematics(self._q(q), self.l1, self.l2, self.planar)

    def mass_matrix(self, q, check: bool = True) -> np.ndarray:
        _, _, Jp, Jl, Jw, dJp, dJl, dJw = self.kinematics(q)
        M, _ = _numeric.assemble(Jp, Jl, Jw, dJp, dJl, dJw, self.coef, self.inertia)
        if check:
            lam = np.linalg.eigvalsh(M)
            if lam[0] < EIG_FLOOR:
                raise SingularConfiguration(f"min eigenvalue of M is {lam[0]:.3e}")
        return M

    def mass_matrix_derivative(self, q) -> np.ndarray:
        """D[k, i, j] = ∂M_ij/∂q_k."""
        _, _, Jp, Jl, Jw, dJp, dJl, dJw = self.kinematics(q)
        return _numeric.assemble(Jp, Jl, Jw, dJp, dJl, dJw, self.coef, self.inertia)[1]

    def coriolis_matrix(self, q, dq) -> np.ndarray:
        return _numeric.christoffel(self.mass_matrix_derivative(q), self._q(dq))

    def gravity_vector(self, q) -> np.ndarray:
        _, _, Jp, Jl, *_ = self.kinematics(q)
        return _numeric.gravity(Jp, Jl, self.coef, self.up)

    def potential(self, q) -> float:
        p, l, *_ = self.kinematics(q)
        a = self.coef
        return float(a[5] * (a[3] * p[self.up] + a[4] * l[self.up]))

    def input_jacobian(self, q) -> np.ndarray:
        _, _, Jp, *_ = self.kinematics(q)
        return self._input_jacobian(Jp)

    def _input_jacobian(self, Jp) -> np.ndarray:
        raise NotImplementedError

    def terms(self, q, dq) -> DynamicsTerms:
        q, dq = self._q(q), self._q(dq)
        M, C, g, Jp, _ = _numeric.evaluate(q, dq, self.l1, self.l2, self.coef,
                                          self.inertia, self.planar)
        return DynamicsTerms(M=M, C=C, g=g, J_u=self._input_jacobian(Jp), dq=dq)

    def accel(self, q, dq, u, f_ext=None) -> np.ndarray:
        q, dq = self._q(q), self._q(dq)
        u = np.ascontiguousarray(u, dtype=float)
        f = np.zeros(self.ndof) if f_ext is None else np.ascontiguousarray(f_ext, dtype=float)
        ddq, ok = _numeric.accel(q, dq, u, f, self.l1, self.l2, self.coef, self.inertia,
                                 self.planar, EIG_FLOOR)
        if not ok:
            raise SingularConfiguration(f"mass matrix not positive definite at q={q}")
        return ddq

    def point_jacobians_xy(self, q):
        """Horizontal rows of the platform and load translational Jacobians."""
        _, _, Jp, Jl, *_ = self.kinematics(q)
        h = 1 if self.planar else 2
        return Jp[:h], Jl[:h]


class FullModel(_Chain):
    """Joints q1..q5; input u = (F_x, F_y, τ_z).

    F_x, F_y are world-frame horizontal forces on the platform, τ_z the yaw
    torque acting on joint q3.
    """

    ndof, ny, nc, nu = 5, 3, 2, 3
    planar = False

    def __init__(self, params: ModelParams):
        validate(params)
        self.params = params
        super().__init__(params.l1, params.l2, params.m_c1, params.m_p, params.m_c2,
                         params.m_l, params.inertia, params.g0)

    def _input_jacobian(self, Jp):
        yaw = np.zeros(self.ndof)
        yaw[2] = 1.0
        return np.vstack([Jp[0], Jp[1], yaw])

    def __repr__(self):
        return f"FullModel({self.params!r})"


class PlanarModel(_Chain):
    """Planar double pendulum; q̂1 driven by a joint torque, q̂2 passive."""

    ndof, ny, nc, nu = 2, 1, 1, 1
    planar = True

    def __init__(self, params: PlanarParams | ModelParams):
        if isinstance(params, ModelParams):
            params = planar_reduction(params)
        validate(params)
        self.params = params
        a, b = params.link1, params.link2
        super().__init__(a.length, b.length, a.rod_mass, a.tip_mass, b.rod_mass, b.tip_mass,
                         [[a.tip_inertia]], params.g0)

    def _input_jacobian(self, Jp):
        return np.array([[1.0, 0.0]])

    def __repr__(self):
        return f"PlanarModel({self.params!r})"


def make_model(params, kind: str = "full") -> _Chain:
    if kind == "full":
        return FullModel(params)
    if kind == "planar":
        return PlanarModel(params)
    raise ValueError(f"unknown model kind {kind!r}")


def mass_matrix(model: _Chain, q) -> np.ndarray:
    return model.mass_matrix(q)


def coriolis_matrix(model: _Chain, q, dq) -> np.ndarray:
    return model.coriolis_matrix(q, dq)


def gravity_vector(model: _Chain, q) -> np.ndarray:
    return model.gravity_vector(q)


def input_jacobian(model: _Chain, q) -> np.ndarray:
    return model.input_jacobian(q)


def forward_dynamics(model: _Chain, q, dq, u, f_ext=None) -> np.ndarray:
    """q̈ = M⁻¹(J_uᵀ u + f_ext − C q̇ − g)."""
    return model.accel(q, dq, u, f_ext)


def energy(model: _Chain, q, dq) -> float:
    """T + V from the assembled mass matrix and potential."""
    dq = np.asarray(dq, dtype=float)
    return float(0.5 * dq @ model.mass_matrix(q, check=False) @ dq + model.potential(q))


__all__ = [
    "DynamicsTerms", "FullModel", "PlanarModel", "make_model", "mass_matrix",
    "coriolis_matrix", "gravity_vector", "input_jacobian", "forward_dynamics",
    "energy", "lagrangian_oracle",
]
