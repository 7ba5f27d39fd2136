"""Kinetic and potential energy straight from link kinematics.

Used only to cross-check the assembled M, C, g. Velocities come from
angular-velocity propagation along the chain and rod energies from
Gauss-Legendre quadrature, so nothing here shares code with the symbolic
Jacobians in :mod:`dynamics`.
"""

from __future__ import annotations

import numpy as np

# 2-point Gauss-Legendre on [0, 1]; exact for the quadratic |v(s)|² of a rigid rod
_S = 0.5 + np.array([-0.5, 0.5]) / np.sqrt(3.0)
_W = np.array([0.5, 0.5])

_EX, _EY, _EZ = np.eye(3)


def _rx(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])


def _ry(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])


def _rz(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])


def _rod(m, r_a, v_a, r_b, v_b, g0, up):
    T = V = 0.0
    for s, w in zip(_S, _W):
        v = (1 - s) * v_a + s * v_b
        r = (1 - s) * r_a + s * r_b
        T += w * 0.5 * m * (v @ v)
        V += w * m * g0 * r[up]
    return T, V


def _full(model, q, dq):
    P = model.params
    q1, q2, q3, q4, q5 = q
    # q1/q4 turn about -y (tilt toward +x), q2/q5 about the rotated x
    R1 = _ry(-q1) @ _rx(q2)
    Rp = R1 @ _rz(q3)
    Rl = Rp @ _ry(-q4) @ _rx(q5)

    w_c1 = -dq[0] * _EY + dq[1] * (_ry(-q1) @ _EX)
    w_p = w_c1 + dq[2] * (R1 @ _EZ)
    w_c2 = w_p - dq[3] * (Rp @ _EY) + dq[4] * (Rp @ _ry(-q4) @ _EX)

    origin = np.zeros(3)
    r_p = R1 @ np.array([0.0, 0.0, -P.l1])
    v_p = np.cross(w_c1, r_p)
    r_l = r_p + Rl @ np.array([0.0, 0.0, -P.l2])
    v_l = v_p + np.cross(w_c2, r_l - r_p)

    T1, V1 = _rod(P.m_c1, origin, origin, r_p, v_p, P.g0, 2)
    T2, V2 = _rod(P.m_c2, r_p, v_p, r_l, v_l, P.g0, 2)
    I_world = Rp @ P.inertia @ Rp.T
    T = (T1 + T2 + 0.5 * P.m_p * v_p @ v_p + 0.5 * w_p @ I_world @ w_p
         + 0.5 * P.m_l * v_l @ v_l)
    V = V1 + V2 + P.g0 * (P.m_p * r_p[2] + P.m_l * r_l[2])
    return T, V


def _planar(model, q, dq):
    P = model.params
    a, b = P.link1, P.link2
    w1 = dq[0]
    w2 = dq[0] + dq[1]
    e1 = np.array([np.sin(q[0]), -np.cos(q[0])])
    e2 = np.array([np.sin(q[0] + q[1]), -np.cos(q[0] + q[1])])
    perp = lambda e: np.array([-e[1], e[0]])  # noqa: E731  (ω × r in 2D)

    origin = np.zeros(2)
    r_p = a.length * e1
    v_p = w1 * a.length * perp(e1)
    r_l = r_p + b.length * e2
    v_l = v_p + w2 * b.length * perp(e2)

    T1, V1 = _rod(a.rod_mass, origin, origin, r_p, v_p, P.g0, 1)
    T2, V2 = _rod(b.rod_mass, r_p, v_p, r_l, v_l, P.g0, 1)
    T = (T1 + T2 + 0.5 * a.tip_mass * v_p @ v_p + 0.5 * a.tip_inertia * w1 ** 2
         + 0.5 * b.tip_mass * v_l @ v_l)
    V = V1 + V2 + P.g0 * (a.tip_mass * r_p[1] + b.tip_mass * r_l[1])
    return T, V


def points(model, q) -> tuple[np.ndarray, np.ndarray]:
    """World positions of the platform and load points."""
    q = np.asarray(q, dtype=float)
    P = model.params
    if q.size == 2:
        a, b = P.link1, P.link2
        r_p = a.length * np.array([np.sin(q[0]), -np.cos(q[0])])
        return r_p, r_p + b.length * np.array([np.sin(q[0] + q[1]), -np.cos(q[0] + q[1])])
    R1 = _ry(-q[0]) @ _rx(q[1])
    Rl = R1 @ _rz(q[2]) @ _ry(-q[3]) @ _rx(q[4])
    r_p = R1 @ np.array([0.0, 0.0, -P.l1])
    return r_p, r_p + Rl @ np.array([0.0, 0.0, -P.l2])


def lagrangian_oracle(model, q, dq) -> tuple[float, float]:
    """Return (T, V) for ``model`` at (q, q̇)."""
    q = np.asarray(q, dtype=float)
    dq = np.asarray(dq, dtype=float)
    if q.size == 5:
        return _full(model, q, dq)
    return _planar(model, q, dq)
