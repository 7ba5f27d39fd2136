"""Partial feedback linearization of the actuated joints, with and without coupling.

Output y = Bᵀq (q1, q2, q3 in the full model), internal q_c = A q (q4, q5).
Both controllers command u = G v + R; they differ in the signal v fed to
the q_a columns of the output inertia:

* standard: v_a makes the internal loop q̈_c + K_dc q̃̇_c + K_pc q̃_c = 0 exact,
  which leaves the output loop driven by G v_a (it does not vanish at rest);
* coupled:  v̄_a = v_a + (λ_c G)⁻¹ λ_c (−K_dy ỹ̇ − K_py ỹ) trades exactness of
  both loops for the cross terms N_c, N_y that damp the whole chain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from . import _numeric
from .dynamics import DynamicsTerms, make_model
from .errors import CouplingSingular, IllConditioned
from .model import ModelParams, default_params

COND_LIMIT = 1e8
DET_FLOOR = 1e-10


class Mode(str, enum.Enum):
    STANDARD = "standard"
    COUPLED = "coupled"


def default_gains(kind: str = "full") -> dict[str, np.ndarray]:
    """Gain set used throughout the nominal studies.

    The planar reduction takes the entries of the channels it keeps:
    q̂1 ↔ q1 (4230, 3950) and q̂2 ↔ q4 (2200, 50).
    """
    if kind == "planar":
        return dict(K_py=np.array([[4230.0]]), K_dy=np.array([[3950.0]]),
                    K_pc=np.array([[2200.0]]), K_dc=np.array([[50.0]]))
    return dict(K_py=np.diag([4230.0, 4230.0, 30.0]), K_dy=np.diag([3950.0, 3950.0, 10.0]),
                K_pc=np.diag([2200.0, 2200.0]), K_dc=np.diag([50.0, 50.0]))


@dataclass(frozen=True, eq=False)
class ControllerConfig:
    mode: Mode = Mode.COUPLED
    kind: str = "full"
    params: ModelParams = field(default_factory=default_params)
    K_py: np.ndarray | None = None
    K_dy: np.ndarray | None = None
    K_pc: np.ndarray | None = None
    K_dc: np.ndarray | None = None
    y_ref: np.ndarray | None = None
    dy_ref: np.ndarray | None = None
    qc_ref: np.ndarray | None = None
    dqc_ref: np.ndarray | None = None

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("mode", Mode(self.mode))
        model = make_model(self.params, self.kind)
        ny, nc = model.ny, model.nc
        gains = default_gains(self.kind)
        for name, n in (("K_py", ny), ("K_dy", ny), ("K_pc", nc), ("K_dc", nc)):
            value = gains[name] if getattr(self, name) is None else _as_gain(getattr(self, name))
            if value.shape != (n, n):
                raise ValueError(f"{name} must be {n}x{n}, got {value.shape}")
            if not np.allclose(value, value.T) or np.linalg.eigvalsh(value)[0] <= 0:
                raise ValueError(f"{name} must be symmetric positive definite")
            set_(name, value)
        for name, n in (("y_ref", ny), ("dy_ref", ny), ("qc_ref", nc), ("dqc_ref", nc)):
            value = getattr(self, name)
            value = np.zeros(n) if value is None else np.asarray(value, dtype=float).reshape(-1)
            if value.shape != (n,):
                raise ValueError(f"{name} must have {n} entries")
            set_(name, value)
        self.__dict__["model"] = model

    model: object = field(init=False, repr=False, compare=False, default=None)

    def with_mode(self, mode: Mode | str) -> "ControllerConfig":
        return replace(self, mode=Mode(mode))


def _as_gain(value) -> np.ndarray:
    a = np.asarray(value, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = np.diag(a)
    return a


@dataclass
class ControlBreakdown:
    Lambda_y: np.ndarray
    mu_y: np.ndarray
    rho_y: np.ndarray
    mu_c: np.ndarray
    rho_c: np.ndarray
    lambda_c: np.ndarray
    G: np.ndarray
    R: np.ndarray
    v_a: np.ndarray
    v_a_bar: np.ndarray | None
    N_c: np.ndarray
    N_y: np.ndarray
    u: np.ndarray
    terms: DynamicsTerms
    cond: float


def _minv_products(terms: DynamicsTerms):
    """M⁻¹ J_uᵀ, M⁻¹ C q̇, M⁻¹ g in one factorization."""
    rhs = np.column_stack([terms.J_u.T, terms.Cdq, terms.g])
    sol = np.linalg.solve(terms.M, rhs)
    nu = terms.J_u.shape[0]
    return sol[:, :nu], sol[:, nu], sol[:, nu + 1]


def output_terms(terms: DynamicsTerms, ny: int = 3):
    """(Λ_y, μ_y, ρ_y) of the output dynamics Λ_y ÿ + μ_y + ρ_y = u."""
    MJ, MC, Mg = _minv_products(terms)
    BMJ = MJ[:ny]
    cond = np.linalg.cond(BMJ)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditioned(cond)
    Lam = np.linalg.inv(BMJ)
    return Lam, Lam @ MC[:ny], Lam @ Mg[:ny]


def internal_terms(terms: DynamicsTerms, ny: int = 3):
    """(μ_c, ρ_c, λ_c) of the internal dynamics q̈_c + μ_c + ρ_c = λ_c u."""
    MJ, MC, Mg = _minv_products(terms)
    return MC[ny:], Mg[ny:], MJ[ny:]


def g_and_r(Lam, mu_y, rho_y, cfg: ControllerConfig, y, dy):
    """Split u = μ_y + ρ_y + Λ_y [v_a; 0] − K_dy ỹ̇ − K_py ỹ into G v_a + R."""
    nc = cfg.K_pc.shape[0]
    G = Lam[:, :nc]
    R = mu_y + rho_y - cfg.K_dy @ (dy - cfg.dy_ref) - cfg.K_py @ (y - cfg.y_ref)
    return G, R


def _coupling(lam_c, G) -> np.ndarray:
    lG = lam_c @ G
    det = np.linalg.det(lG)
    if abs(det) < DET_FLOOR:
        raise CouplingSingular(det)
    return lG


def v_a_standard(mu_c, rho_c, lam_c, G, R, cfg: ControllerConfig, qc, dqc):
    lG = _coupling(lam_c, G)
    rhs = (mu_c + rho_c - lam_c @ R - cfg.K_dc @ (dqc - cfg.dqc_ref)
           - cfg.K_pc @ (qc - cfg.qc_ref))
    return np.linalg.solve(lG, rhs)


def v_a_coupled(v_a, lam_c, G, cfg: ControllerConfig, y_err, dy_err):
    lG = _coupling(lam_c, G)
    return v_a + np.linalg.solve(lG, lam_c @ (-cfg.K_dy @ dy_err - cfg.K_py @ y_err))


def control_wrench(cfg: ControllerConfig, q, dq) -> tuple[np.ndarray, ControlBreakdown]:
    """Wrench commanded at a measured state, evaluated on the controller's own model."""
    model = cfg.model
    ny = model.ny
    q = np.asarray(q, dtype=float)
    dq = np.asarray(dq, dtype=float)
    terms = model.terms(q, dq)

    MJ, MC, Mg = _minv_products(terms)
    BMJ = MJ[:ny]
    cond = np.linalg.cond(BMJ)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditioned(cond)
    Lam = np.linalg.inv(BMJ)
    mu_y, rho_y = Lam @ MC[:ny], Lam @ Mg[:ny]
    mu_c, rho_c, lam_c = MC[ny:], Mg[ny:], MJ[ny:]

    y, dy = q[:ny], dq[:ny]
    G, R = g_and_r(Lam, mu_y, rho_y, cfg, y, dy)
    v_a = v_a_standard(mu_c, rho_c, lam_c, G, R, cfg, q[ny:], dq[ny:])
    y_err, dy_err = y - cfg.y_ref, dy - cfg.dy_ref
    if cfg.mode is Mode.COUPLED:
        v_bar = v_a_coupled(v_a, lam_c, G, cfg, y_err, dy_err)
        v = v_bar
        N_c = lam_c @ (-cfg.K_dy @ dy_err - cfg.K_py @ y_err)
    else:
        v_bar = None
        v = v_a
        N_c = np.zeros(model.nc)
    u = G @ v + R
    breakdown = ControlBreakdown(
        Lambda_y=Lam, mu_y=mu_y, rho_y=rho_y, mu_c=mu_c, rho_c=rho_c, lambda_c=lam_c,
        G=G, R=R, v_a=v_a, v_a_bar=v_bar, N_c=N_c, N_y=G @ v, u=u, terms=terms, cond=cond,
    )
    return u, breakdown


def wrench(cfg: ControllerConfig, q, dq) -> np.ndarray:
    """Same u as :func:`control_wrench` from the compiled kernel, without the breakdown."""
    m = cfg.model
    u, status, value = _numeric.control_law(
        np.ascontiguousarray(q, dtype=float), np.ascontiguousarray(dq, dtype=float),
        m.l1, m.l2, m.coef, m.inertia, m.planar, cfg.mode is Mode.COUPLED,
        cfg.K_py, cfg.K_dy, cfg.K_pc, cfg.K_dc, cfg.y_ref, cfg.dy_ref, cfg.qc_ref, cfg.dqc_ref,
        COND_LIMIT, DET_FLOOR)
    if status == 1:
        raise IllConditioned(value)
    if status == 2:
        raise CouplingSingular(value)
    if status == 4:
        raise FloatingPointError("non-finite dynamics terms")
    return u


def planar_control_wrench(cfg: ControllerConfig, q, dq) -> float:
    """Scalar joint torque on q̂1 for a planar configuration."""
    if cfg.kind != "planar":
        raise ValueError("planar_control_wrench needs a planar ControllerConfig")
    u, _ = control_wrench(cfg, q, dq)
    return float(u[0])
