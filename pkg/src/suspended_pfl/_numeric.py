"""JIT kernels: inertia assembly, Christoffel symbols and forward dynamics.

``coef`` packs the lumped mass coefficients of a chain::

    [a_pp, a_ll, a_pl, b_p, b_l, g0]

with M = a_pp JpᵀJp + a_ll JlᵀJl + a_pl (JpᵀJl + JlᵀJp) + Jwᵀ I Jw and
V = g0 (b_p z_p + b_l z_l).
"""

import numpy as np
from numba import njit

from ._kinematics_gen import full_kinematics_flat, planar_kinematics_flat


@njit(cache=True)
def kinematics(q, l1, l2, planar):
    if planar:
        flat = planar_kinematics_flat(q, l1, l2)
        n, d, r = 2, 2, 1
    else:
        flat = full_kinematics_flat(q, l1, l2)
        n, d, r = 5, 3, 3
    i = 0
    p = flat[i:i + d].copy()
    i += d
    l = flat[i:i + d].copy()
    i += d
    Jp = flat[i:i + d * n].copy().reshape((d, n))
    i += d * n
    Jl = flat[i:i + d * n].copy().reshape((d, n))
    i += d * n
    Jw = flat[i:i + r * n].copy().reshape((r, n))
    i += r * n
    dJp = flat[i:i + n * d * n].copy().reshape((n, d, n))
    i += n * d * n
    dJl = flat[i:i + n * d * n].copy().reshape((n, d, n))
    i += n * d * n
    dJw = flat[i:i + n * r * n].copy().reshape((n, r, n))
    return p, l, Jp, Jl, Jw, dJp, dJl, dJw


@njit(cache=True)
def assemble(Jp, Jl, Jw, dJp, dJl, dJw, coef, inertia):
    """Return M and D with D[k, i, j] = ∂M_ij/∂q_k."""
    a_pp, a_ll, a_pl = coef[0], coef[1], coef[2]
    d, n = Jp.shape
    r = Jw.shape[0]
    Ap = a_pp * Jp + a_pl * Jl
    Al = a_ll * Jl + a_pl * Jp
    Aw = inertia @ Jw
    M = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            s = 0.0
            for a in range(d):
                s += Jp[a, i] * Ap[a, j] + Jl[a, i] * Al[a, j]
            for a in range(r):
                s += Jw[a, i] * Aw[a, j]
            M[i, j] = s
    D = np.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                s = 0.0
                for a in range(d):
                    s += dJp[k, a, i] * Ap[a, j] + dJl[k, a, i] * Al[a, j]
                for a in range(r):
                    s += dJw[k, a, i] * Aw[a, j]
                D[k, i, j] += s
                D[k, j, i] += s
    return M, D


@njit(cache=True)
def christoffel(D, dq):
    n = dq.shape[0]
    C = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            s = 0.0
            for k in range(n):
                s += (D[k, i, j] + D[j, i, k] - D[i, j, k]) * dq[k]
            C[i, j] = 0.5 * s
    return C


@njit(cache=True)
def gravity(Jp, Jl, coef, up):
    return coef[5] * (coef[3] * Jp[up] + coef[4] * Jl[up])


@njit(cache=True)
def generalized_input(Jp, u, planar):
    """J_uᵀ u: world-horizontal platform force plus yaw joint torque (full), joint torque (planar)."""
    n = Jp.shape[1]
    out = np.zeros(n)
    if planar:
        out[0] = u[0]
    else:
        for i in range(n):
            out[i] = Jp[0, i] * u[0] + Jp[1, i] * u[1]
        out[2] += u[2]
    return out


@njit(cache=True)
def evaluate(q, dq, l1, l2, coef, inertia, planar):
    """(M, C, g, Jp, Jl) at a state."""
    p, l, Jp, Jl, Jw, dJp, dJl, dJw = kinematics(q, l1, l2, planar)
    M, D = assemble(Jp, Jl, Jw, dJp, dJl, dJw, coef, inertia)
    C = christoffel(D, dq)
    g = gravity(Jp, Jl, coef, 1 if planar else 2)
    return M, C, g, Jp, Jl


@njit(cache=True)
def accel(q, dq, u, f_ext, l1, l2, coef, inertia, planar, eig_floor):
    """q̈ = M⁻¹(J_uᵀu + f_ext − C q̇ − g); returns (q̈, ok)."""
    M, C, g, Jp, Jl = evaluate(q, dq, l1, l2, coef, inertia, planar)
    rhs = generalized_input(Jp, u, planar) + f_ext - C @ dq - g
    n = dq.shape[0]
    # Cholesky without LAPACK so a non-PD matrix is reported instead of raised
    L = np.zeros((n, n))
    for j in range(n):
        s = M[j, j]
        for k in range(j):
            s -= L[j, k] * L[j, k]
        if s < eig_floor:
            return np.zeros(n), False
        L[j, j] = np.sqrt(s)
        for i in range(j + 1, n):
            t = M[i, j]
            for k in range(j):
                t -= L[i, k] * L[j, k]
            L[i, j] = t / L[j, j]
    y = np.zeros(n)
    for i in range(n):
        t = rhs[i]
        for k in range(i):
            t -= L[i, k] * y[k]
        y[i] = t / L[i, i]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        t = y[i]
        for k in range(i + 1, n):
            t -= L[k, i] * x[k]
        x[i] = t / L[i, i]
    return x, True


@njit(cache=True)
def rk4(q, dq, u, f_ext, dt, l1, l2, coef, inertia, planar, eig_floor):
    """Classical RK4 step with u, f_ext held; returns (q', q̇', ok)."""
    a1, ok1 = accel(q, dq, u, f_ext, l1, l2, coef, inertia, planar, eig_floor)
    q2, v2 = q + 0.5 * dt * dq, dq + 0.5 * dt * a1
    a2, ok2 = accel(q2, v2, u, f_ext, l1, l2, coef, inertia, planar, eig_floor)
    q3, v3 = q + 0.5 * dt * v2, dq + 0.5 * dt * a2
    a3, ok3 = accel(q3, v3, u, f_ext, l1, l2, coef, inertia, planar, eig_floor)
    q4, v4 = q + dt * v3, dq + dt * a3
    a4, ok4 = accel(q4, v4, u, f_ext, l1, l2, coef, inertia, planar, eig_floor)
    q_next = q + dt / 6.0 * (dq + 2.0 * v2 + 2.0 * v3 + v4)
    dq_next = dq + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    return q_next, dq_next, ok1 and ok2 and ok3 and ok4


@njit(cache=True)
def control_law(q, dq, l1, l2, coef, inertia, planar, coupled, K_py, K_dy, K_pc, K_dc,
                y_ref, dy_ref, qc_ref, dqc_ref, cond_limit, det_floor):
    """Commanded wrench; returns (u, status, value).

    status 0 ok, 1 ill-conditioned output map (value = cond),
    2 singular coupling λ_c G (value = det), 4 non-finite dynamics terms.
    """
    M, C, g, Jp, Jl = evaluate(q, dq, l1, l2, coef, inertia, planar)
    n = q.shape[0]
    ny = K_py.shape[0]
    nc = K_pc.shape[0]
    nu = ny
    rhs = np.zeros((n, nu + 2))
    if planar:
        rhs[0, 0] = 1.0
    else:
        for i in range(n):
            rhs[i, 0] = Jp[0, i]
            rhs[i, 1] = Jp[1, i]
        rhs[2, 2] = 1.0
    rhs[:, nu] = C @ dq
    rhs[:, nu + 1] = g
    if not (np.all(np.isfinite(rhs)) and np.all(np.isfinite(M))):
        return np.zeros(nu), 4, 0.0
    sol = np.linalg.solve(M, rhs)
    BMJ = np.ascontiguousarray(sol[:ny, :nu])
    cond = np.linalg.cond(BMJ)
    if not np.isfinite(cond) or cond > cond_limit:
        return np.zeros(nu), 1, cond
    Lam = np.linalg.inv(BMJ)
    mu_y = Lam @ np.ascontiguousarray(sol[:ny, nu])
    rho_y = Lam @ np.ascontiguousarray(sol[:ny, nu + 1])
    mu_c = np.ascontiguousarray(sol[ny:, nu])
    rho_c = np.ascontiguousarray(sol[ny:, nu + 1])
    lam_c = np.ascontiguousarray(sol[ny:, :nu])
    G = np.ascontiguousarray(Lam[:, :nc])
    y_err = q[:ny] - y_ref
    dy_err = dq[:ny] - dy_ref
    fb_y = -(K_dy @ dy_err) - K_py @ y_err
    R = mu_y + rho_y + fb_y
    lG = lam_c @ G
    det = np.linalg.det(lG)
    if abs(det) < det_floor:
        return np.zeros(nu), 2, det
    b = mu_c + rho_c - lam_c @ R - K_dc @ (dq[ny:] - dqc_ref) - K_pc @ (q[ny:] - qc_ref)
    if coupled:
        b = b + lam_c @ fb_y
    v = np.linalg.solve(lG, b)
    return G @ v + R, 0, 0.0


@njit(cache=True)
def point_force(q, l1, l2, planar, F):
    """J_pᵀF + J_lᵀF over the horizontal rows."""
    p, l, Jp, Jl, Jw, dJp, dJl, dJw = kinematics(q, l1, l2, planar)
    h = 1 if planar else 2
    n = q.shape[0]
    out = np.zeros(n)
    for i in range(n):
        for a in range(h):
            out[i] += (Jp[a, i] + Jl[a, i]) * F[a]
    return out


@njit(cache=True)
def simulate(q0, dq0, steps, dt, plant_l, plant_coef, plant_inertia,
             ctrl_l, ctrl_coef, ctrl_inertia, planar, coupled,
             K_py, K_dy, K_pc, K_dc, y_ref, dy_ref, qc_ref, dqc_ref, cond_limit, det_floor,
             eig_floor, wind_on, t_on, t_off, F, noise_mode, accel_std, rel, leak, vel_std,
             normals):
    """Closed-loop run; noise_mode 0 none, 1 leaky q̈ integration, 2 additive q̇.

    Returns (Q, DQ, U, QM, DQM, status, k, value); status 0 ok, 1 ill-conditioned,
    2 singular coupling, 3 singular plant inertia, 4 non-finite state.
    """
    n = q0.shape[0]
    nu = K_py.shape[0]
    Q = np.empty((steps + 1, n))
    DQ = np.empty((steps + 1, n))
    U = np.empty((steps + 1, nu))
    QM = np.empty((steps + 1, n))
    DQM = np.empty((steps + 1, n))
    q = q0.copy()
    dq = dq0.copy()
    dq_est = dq0.copy()
    zero = np.zeros(n)
    for k in range(steps + 1):
        t = k * dt
        Q[k] = q
        DQ[k] = dq
        if noise_mode == 1:
            dqm = dq_est.copy()
        elif noise_mode == 2:
            dqm = dq + normals[k] * np.maximum(vel_std, rel * np.abs(dq))
        else:
            dqm = dq.copy()
        QM[k] = q
        DQM[k] = dqm
        u, status, value = control_law(q, dqm, ctrl_l[0], ctrl_l[1], ctrl_coef, ctrl_inertia,
                                       planar, coupled, K_py, K_dy, K_pc, K_dc, y_ref, dy_ref,
                                       qc_ref, dqc_ref, cond_limit, det_floor)
        if status != 0:
            return Q, DQ, U, QM, DQM, status, k, value
        if not np.all(np.isfinite(u)):
            return Q, DQ, U, QM, DQM, 4, k, 0.0
        U[k] = u
        if k == steps:
            break
        if wind_on and t_on <= t and t < t_off:
            f_ext = point_force(q, plant_l[0], plant_l[1], planar, F)
        else:
            f_ext = zero
        q_next, dq_next, ok = rk4(q, dq, u, f_ext, dt, plant_l[0], plant_l[1], plant_coef,
                                  plant_inertia, planar, eig_floor)
        if not ok:
            return Q, DQ, U, QM, DQM, 3, k, 0.0
        if not (np.all(np.isfinite(q_next)) and np.all(np.isfinite(dq_next))):
            return Q, DQ, U, QM, DQM, 4, k, 0.0
        if noise_mode == 1:
            a = (dq_next - dq) / dt
            a_meas = a + normals[k] * np.maximum(accel_std, rel * np.abs(a))
            dq_est = leak * dq_est + dt * a_meas
        q = q_next
        dq = dq_next
    return Q, DQ, U, QM, DQM, 0, steps, 0.0
