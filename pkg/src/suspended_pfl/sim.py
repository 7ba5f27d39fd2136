"""Fixed-step closed-loop simulation.

Each control period: measure -> control_wrench (controller's nominal model)
-> wind generalized force -> one RK4 step of the plant with u held constant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import _numeric
from .control import COND_LIMIT, DET_FLOOR, ControllerConfig, Mode, wrench
from .dynamics import EIG_FLOOR
from .dynamics import make_model
from .errors import (
    ConfigValidationError, CouplingSingular, IllConditioned, RunAborted, SingularConfiguration,
)
from .model import JointState, ModelParams, default_params, validate

log = logging.getLogger(__name__)

AIR_DENSITY = 1.225  # kg/m^3
TEN_KNOTS = 5.144  # m/s


def drag_force(speed: float = TEN_KNOTS, cda: float = 0.5, rho: float = AIR_DENSITY) -> float:
    """Quadratic drag ½ ρ C_dA v² [N]."""
    return 0.5 * rho * cda * speed ** 2


@dataclass
class DisturbanceProfile:
    t_on: float = 10.0
    t_off: float = 20.0
    force: np.ndarray = field(default_factory=lambda: np.full(2, drag_force()))

    def __post_init__(self):
        self.force = np.asarray(self.force, dtype=float).reshape(-1)

    def active(self, t: float) -> bool:
        return self.t_on <= t < self.t_off


@dataclass
class NoiseConfig:
    """Acceleration-measurement noise.

    Per sample, std = max(accel_std, relative_strength * |q̈_true|). With
    ``velocity_estimation`` the controller's q̇ is the leaky integral of the
    noisy q̈; otherwise Gaussian noise with std
    max(velocity_std, relative_strength * |q̇|) is added to q̇ directly.
    """

    accel_std: float = 1.0
    relative_strength: float = 0.10
    velocity_estimation: bool = True
    leak: float = 0.999
    velocity_std: float = 0.0

    def validate(self) -> None:
        if self.accel_std < 0 or self.velocity_std < 0:
            raise ConfigValidationError("noise standard deviations must be >= 0")
        if not 0 <= self.relative_strength <= 1:
            raise ConfigValidationError("noise.relative_strength must lie in [0, 1]")
        if not 0 < self.leak <= 1:
            raise ConfigValidationError("noise.leak must lie in (0, 1]")


@dataclass
class ScenarioConfig:
    plant_params: ModelParams = field(default_factory=default_params)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    q0: np.ndarray = field(default_factory=lambda: np.array([0.1, 0.2, 0.4, -0.1, -0.2]))
    dq0: np.ndarray | None = None
    duration: float = 30.0
    dt: float = 0.001
    wind: DisturbanceProfile | None = None
    noise: NoiseConfig | None = None
    seed: int = 0
    model: str = "full"
    name: str = "case_a"

    def __post_init__(self):
        self.q0 = np.asarray(self.q0, dtype=float).reshape(-1)
        self.dq0 = np.zeros_like(self.q0) if self.dq0 is None else np.asarray(self.dq0, dtype=float)

    def validate(self) -> None:
        validate(self.plant_params)
        if self.model not in ("full", "planar"):
            raise ConfigValidationError(f"model must be 'full' or 'planar', got {self.model!r}")
        if self.controller.kind != self.model:
            raise ConfigValidationError("controller model kind differs from the plant's")
        n = 5 if self.model == "full" else 2
        if self.q0.shape != (n,) or self.dq0.shape != (n,):
            raise ConfigValidationError(f"initial q and dq need {n} entries")
        if not self.dt > 0:
            raise ConfigValidationError("dt must be > 0")
        if not self.duration >= self.dt:
            raise ConfigValidationError("duration must be >= dt")
        if not JointState(self.q0, self.dq0).in_workspace():
            raise ConfigValidationError("initial state outside the validated workspace")
        if self.wind is not None:
            w = self.wind
            if not (0 <= w.t_on < w.t_off <= self.duration):
                raise ConfigValidationError("wind window must satisfy 0 <= t_on < t_off <= duration")
            if w.force.shape != (2,):
                raise ConfigValidationError("wind.force needs two entries (F_wx, F_wy)")
        if self.noise is not None:
            self.noise.validate()
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigValidationError("seed must be an unsigned 64-bit integer")

    @property
    def steps(self) -> int:
        return int(round(self.duration / self.dt))


@dataclass
class SimLog:
    t: np.ndarray
    q: np.ndarray
    dq: np.ndarray
    u: np.ndarray
    q_meas: np.ndarray | None = None
    dq_meas: np.ndarray | None = None
    wind: np.ndarray | None = None
    name: str = ""

    @property
    def ndof(self) -> int:
        return self.q.shape[1]

    def joint(self, name: str) -> np.ndarray:
        """Column for 'q1'..'q5' or 'dq1'..'dq5'."""
        if name.startswith("dq"):
            return self.dq[:, int(name[2:]) - 1]
        return self.q[:, int(name[1:]) - 1]


def step(plant, q, dq, u, f_ext, dt: float):
    """One classical RK4 step with u and f_ext held over the interval."""
    f = np.zeros(plant.ndof) if f_ext is None else np.ascontiguousarray(f_ext, dtype=float)
    q_next, dq_next, ok = _numeric.rk4(
        np.ascontiguousarray(q, dtype=float), np.ascontiguousarray(dq, dtype=float),
        np.ascontiguousarray(u, dtype=float), f, float(dt), plant.l1, plant.l2, plant.coef,
        plant.inertia, plant.planar, EIG_FLOOR)
    if not ok:
        raise SingularConfiguration(f"mass matrix not positive definite near q={q}")
    return q_next, dq_next


def wind_generalized_force(model, q, profile: DisturbanceProfile | None, t: float) -> np.ndarray:
    """J_pᵀ F_w + J_lᵀ F_w inside the wind window, zero outside."""
    if profile is None or not profile.active(t):
        return np.zeros(model.ndof)
    Jp, Jl = model.point_jacobians_xy(q)
    F = profile.force[: Jp.shape[0]]
    return Jp.T @ F + Jl.T @ F


class Sensor:
    """Produces the (q, q̇) the controller sees."""

    def __init__(self, noise: NoiseConfig | None, dq0, rng: np.random.Generator, dt: float):
        self.noise = noise
        self.rng = rng
        self.dt = dt
        self.dq_est = np.array(dq0, dtype=float)

    def measure(self, q, dq):
        if self.noise is None:
            return q, dq
        if self.noise.velocity_estimation:
            return q, self.dq_est.copy()
        n = self.noise
        std = np.maximum(n.velocity_std, n.relative_strength * np.abs(dq))
        return q, dq + self.rng.standard_normal(dq.shape) * std

    def update(self, ddq_true) -> None:
        """Feed the true mean acceleration of the last step."""
        n = self.noise
        if n is None or not n.velocity_estimation:
            return
        std = np.maximum(n.accel_std, n.relative_strength * np.abs(ddq_true))
        ddq_meas = ddq_true + self.rng.standard_normal(ddq_true.shape) * std
        self.dq_est = n.leak * self.dq_est + self.dt * ddq_meas


def measure(noise: NoiseConfig | None, q, dq, rng: np.random.Generator, dq_est=None):
    """Stateless single reading; ``dq_est`` is the running estimate when integrating."""
    sensor = Sensor(noise, dq if dq_est is None else dq_est, rng, dt=0.0)
    return sensor.measure(np.asarray(q, dtype=float), np.asarray(dq, dtype=float))


def run(config: ScenarioConfig, fast: bool = True) -> SimLog:
    """Simulate a scenario.

    ``fast`` runs the whole loop in one compiled kernel; ``fast=False`` runs
    the same loop step by step in Python from :func:`step`, :class:`Sensor`
    and :func:`wind_generalized_force`. Both consume the RNG identically.
    """
    config.validate()
    plant = make_model(config.plant_params, config.model)
    log_ = (_run_fast if fast else _run_python)(config, plant)
    return log_


def _abort(config, t, q, dq, exc):
    log.error("run %s aborted at t=%.4f: %s", config.name, t, exc)
    return RunAborted(t, q, dq, exc)


def _noise_mode(noise: NoiseConfig | None) -> int:
    if noise is None:
        return 0
    return 1 if noise.velocity_estimation else 2


def _run_fast(config: ScenarioConfig, plant) -> SimLog:
    ctrl = config.controller
    cm = ctrl.model
    n, dt, N = plant.ndof, config.dt, config.steps
    rng = np.random.default_rng(int(config.seed))
    noise = config.noise
    mode = _noise_mode(noise)
    normals = rng.standard_normal((N + 1, n)) if mode else np.zeros((1, n))
    nz = noise or NoiseConfig()
    wind = config.wind
    Q, DQ, U, QM, DQM, status, k, value = _numeric.simulate(
        config.q0, config.dq0, N, float(dt),
        np.array([plant.l1, plant.l2]), plant.coef, plant.inertia,
        np.array([cm.l1, cm.l2]), cm.coef, cm.inertia, plant.planar,
        ctrl.mode is Mode.COUPLED, ctrl.K_py, ctrl.K_dy, ctrl.K_pc, ctrl.K_dc,
        ctrl.y_ref, ctrl.dy_ref, ctrl.qc_ref, ctrl.dqc_ref, COND_LIMIT, DET_FLOOR, EIG_FLOOR,
        wind is not None, wind.t_on if wind else 0.0, wind.t_off if wind else 0.0,
        wind.force if wind else np.zeros(2), mode, float(nz.accel_std),
        float(nz.relative_strength), float(nz.leak), float(nz.velocity_std), normals)
    t = np.arange(N + 1) * dt
    if status:
        cause = {
            1: IllConditioned(value),
            2: CouplingSingular(value),
            3: SingularConfiguration("mass matrix not positive definite"),
            4: FloatingPointError("state diverged"),
        }[status]
        raise _abort(config, t[k], Q[k], DQ[k], cause)
    W = None
    if wind is not None:
        W = np.zeros((N + 1, 2))
        W[(t >= wind.t_on) & (t < wind.t_off)] = wind.force
    keep = noise is not None
    return SimLog(t=t, q=Q, dq=DQ, u=U, q_meas=QM if keep else None,
                  dq_meas=DQM if keep else None, wind=W, name=config.name)


def _run_python(config: ScenarioConfig, plant) -> SimLog:
    ctrl = config.controller
    n, dt, N = plant.ndof, config.dt, config.steps
    rng = np.random.default_rng(int(config.seed))
    sensor = Sensor(config.noise, config.dq0, rng, dt)

    t = np.arange(N + 1) * dt
    Q = np.empty((N + 1, n))
    DQ = np.empty((N + 1, n))
    U = np.empty((N + 1, plant.nu))
    QM = np.empty((N + 1, n)) if config.noise is not None else None
    DQM = np.empty((N + 1, n)) if config.noise is not None else None
    W = np.zeros((N + 1, 2)) if config.wind is not None else None

    q, dq = config.q0.copy(), config.dq0.copy()
    for k in range(N + 1):
        tk = t[k]
        Q[k], DQ[k] = q, dq
        try:
            qm, dqm = sensor.measure(q, dq)
            u = wrench(ctrl, qm, dqm)
            if not np.all(np.isfinite(u)):
                raise FloatingPointError("non-finite wrench")
            U[k] = u
            if QM is not None:
                QM[k], DQM[k] = qm, dqm
            if W is not None and config.wind.active(tk):
                W[k] = config.wind.force
            if k == N:
                break
            f_ext = wind_generalized_force(plant, q, config.wind, tk)
            q_next, dq_next = step(plant, q, dq, u, f_ext, dt)
            if not (np.all(np.isfinite(q_next)) and np.all(np.isfinite(dq_next))):
                raise FloatingPointError("state diverged")
        except (ArithmeticError, FloatingPointError, np.linalg.LinAlgError) as exc:
            raise _abort(config, tk, q, dq, exc) from exc
        sensor.update((dq_next - dq) / dt)
        q, dq = q_next, dq_next
    return SimLog(t=t, q=Q, dq=DQ, u=U, q_meas=QM, dq_meas=DQM, wind=W, name=config.name)
