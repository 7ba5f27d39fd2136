"""Physical parameters of the cable-suspended platform and its planar reduction.

Chain (q measured from the downward vertical, world z up):

    anchor O --q1 (about -y)--q2 (rotated x)-- cable l1 --> platform
    platform --q3 (yaw, platform z)--q4 (about platform -y)--q5 (rotated x)-- cable l2 --> load

Positive q1/q4 swing the cables toward +x, positive q2/q5 toward +y, so each
horizontal force channel acts on the joint it regulates. The platform's
roll/pitch follow the upper cable; q3 is its yaw. Cables are uniform slender
rods, the load is a point mass.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveParameter

#: Actuated output coordinates (q1, q2, q3) and passive load coordinates (q4, q5).
OUTPUT_IDX = (0, 1, 2)
INTERNAL_IDX = (3, 4)


@dataclass(frozen=True)
class ModelParams:
    m_p: float = 4.06
    m_l: float = 1.4
    I_xx: float = 0.0646
    I_yy: float = 0.0646
    I_zz: float = 0.0682
    l1: float = 1.5
    l2: float = 0.75
    m_c1: float = 0.15
    m_c2: float = 0.10
    g0: float = 9.81

    def replace(self, **changes) -> "ModelParams":
        return dataclasses.replace(self, **changes)

    @property
    def inertia(self) -> np.ndarray:
        return np.diag([self.I_xx, self.I_yy, self.I_zz])


@dataclass(frozen=True)
class PlanarLink:
    length: float
    rod_mass: float
    tip_mass: float
    # rotational inertia of the tip body about the joint axis
    tip_inertia: float = 0.0


@dataclass(frozen=True)
class PlanarParams:
    """2-DOF double pendulum: q̂1 actuated (upper cable + platform), q̂2 passive (load)."""

    link1: PlanarLink
    link2: PlanarLink
    g0: float = 9.81


@dataclass
class JointState:
    q: np.ndarray
    dq: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        self.dq = np.zeros_like(self.q) if self.dq is None else np.asarray(self.dq, dtype=float)
        if self.q.shape != self.dq.shape:
            raise ValueError(f"q {self.q.shape} and dq {self.dq.shape} differ in shape")

    @property
    def q_a(self) -> np.ndarray:
        return self.q[:2]

    @property
    def q_b(self) -> np.ndarray:
        return self.q[2:3]

    @property
    def q_c(self) -> np.ndarray:
        return self.q[3:]

    def in_workspace(self, eps: float = 0.05) -> bool:
        """Finite and clear of the q2/q5 = ±pi/2 representation singularities."""
        if not (np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.dq))):
            return False
        if self.q.size != 5:
            return True
        lim = np.pi / 2 - eps
        return bool(abs(self.q[1]) < lim and abs(self.q[4]) < lim)


def default_params() -> ModelParams:
    """Nominal platform/load constants."""
    return ModelParams()


def uncertain_params() -> ModelParams:
    """Plant used for the model-mismatch study (heavier platform and load)."""
    return ModelParams(m_p=10.06, m_l=20.4, I_xx=0.75, I_yy=0.75, I_zz=0.5)


def validate(params: ModelParams | PlanarParams) -> None:
    """Raise NonPositiveParameter naming the first field that is not > 0."""
    if isinstance(params, PlanarParams):
        for prefix, link in (("link1", params.link1), ("link2", params.link2)):
            for name in ("length", "rod_mass", "tip_mass"):
                _check_positive(f"{prefix}.{name}", getattr(link, name))
            if not link.tip_inertia >= 0:
                raise NonPositiveParameter(f"{prefix}.tip_inertia", link.tip_inertia)
        _check_positive("g0", params.g0)
        return
    for f in dataclasses.fields(params):
        _check_positive(f.name, getattr(params, f.name))


def _check_positive(name: str, value: float) -> None:
    if not (np.isfinite(value) and value > 0):
        raise NonPositiveParameter(name, value)


def planar_reduction(params: ModelParams) -> PlanarParams:
    """Restrict the chain to the q1/q4 plane.

    Each planar link is the corresponding cable (uniform rod) with the body it
    carries as a tip mass. The platform also keeps its inertia about the swing
    axis (I_yy, since q1 turns about -y), which makes the planar model the
    exact restriction of the full one to q2 = q3 = q5 = 0.
    """
    validate(params)
    return PlanarParams(
        link1=PlanarLink(params.l1, params.m_c1, params.m_p, params.I_yy),
        link2=PlanarLink(params.l2, params.m_c2, params.m_l),
        g0=params.g0,
    )
