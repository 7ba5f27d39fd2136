"""Symbolic forward kinematics of the two chains and the code generator.

Only point positions, their Jacobians and the Jacobian partials are derived
symbolically; inertia assembly happens numerically in :mod:`_numeric`.
The compiled kernels live in ``_kinematics_gen.py``; rebuild them with
``python -m suspended_pfl._kinematics`` after changing a chain here.

Flat output layout (n joints, d position rows, r angular-velocity rows)::

    p[d] | l[d] | Jp[d,n] | Jl[d,n] | Jw[r,n] | dJp[n,d,n] | dJl[n,d,n] | dJw[n,r,n]
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import sympy as sp
from sympy.printing.pycode import PythonCodePrinter

GEN_PATH = Path(__file__).with_name("_kinematics_gen.py")


def _rx(a):
    c, s = sp.cos(a), sp.sin(a)
    return sp.Matrix([[1, 0, 0], [0, c, -s], [0, s, c]])


def _ry(a):
    c, s = sp.cos(a), sp.sin(a)
    return sp.Matrix([[c, 0, s], [0, 1, 0], [-s, 0, c]])


def _rz(a):
    c, s = sp.cos(a), sp.sin(a)
    return sp.Matrix([[c, -s, 0], [s, c, 0], [0, 0, 1]])


def _flatten(q, p, l, Jw):
    Jp = p.jacobian(q)
    Jl = l.jacobian(q)
    parts = [p, l, Jp, Jl, Jw]
    parts += [Jp.diff(qk) for qk in q]
    parts += [Jl.diff(qk) for qk in q]
    parts += [Jw.diff(qk) for qk in q]
    return [e for m in parts for e in m]


@lru_cache(maxsize=None)
def full_chain():
    """(q symbols, flat expressions) of the 5-joint chain."""
    q = sp.symbols("q1:6")
    l1, l2 = sp.symbols("l1 l2", positive=True)
    # q1/q4 tilt toward +x (rotation about -y), q2/q5 toward +y (about the rotated x)
    r_cable = _ry(-q[0]) * _rx(q[1])
    r_plat = r_cable * _rz(q[2])
    r_load = r_plat * _ry(-q[3]) * _rx(q[4])
    p = r_cable * sp.Matrix([0, 0, -l1])
    l = p + r_load * sp.Matrix([0, 0, -l2])
    cols = []
    for qk in q:
        w = r_plat.T * r_plat.diff(qk)
        cols.append(sp.Matrix([w[2, 1], w[0, 2], w[1, 0]]))
    Jw = sp.Matrix.hstack(*cols).applyfunc(sp.simplify)
    return q, (l1, l2), _flatten(q, p, l, Jw)


@lru_cache(maxsize=None)
def planar_chain():
    # (horizontal, vertical) coordinates; the full chain's (y, z) plane
    q = sp.symbols("q1:3")
    l1, l2 = sp.symbols("l1 l2", positive=True)
    p = sp.Matrix([l1 * sp.sin(q[0]), -l1 * sp.cos(q[0])])
    l = p + sp.Matrix([l2 * sp.sin(q[0] + q[1]), -l2 * sp.cos(q[0] + q[1])])
    Jw = sp.Matrix([[1, 0]])
    return q, (l1, l2), _flatten(q, p, l, Jw)


def lambdified(chain):
    """Plain-Python evaluation of a chain, used to check the generated kernels."""
    q, lengths, flat = chain()
    return sp.lambdify([q, *lengths], flat, modules="math", cse=True)


def _kernel_source(name: str, chain) -> str:
    q, lengths, flat = chain()
    reps, reduced = sp.cse(flat)
    printer = PythonCodePrinter({"standard": "python3"})
    lines = [f"@njit(cache=True)", f"def {name}(q, l1, l2):"]
    for i, qi in enumerate(q):
        lines.append(f"    {qi} = q[{i}]")
    for sym, expr in reps:
        lines.append(f"    {sym} = {printer.doprint(expr)}")
    lines.append(f"    out = np.empty({len(reduced)})")
    for i, expr in enumerate(reduced):
        lines.append(f"    out[{i}] = {printer.doprint(expr)}")
    lines.append("    return out")
    return "\n".join(lines)


def generate_source() -> str:
    header = (
        '"""Generated by suspended_pfl._kinematics; do not edit."""\n\n'
        "import math\n\nimport numpy as np\nfrom numba import njit\n\n\n"
    )
    body = "\n\n\n".join([
        _kernel_source("full_kinematics_flat", full_chain),
        _kernel_source("planar_kinematics_flat", planar_chain),
    ])
    return header + body + "\n"


if __name__ == "__main__":
    GEN_PATH.write_text(generate_source())
    # numba does not invalidate callers of a regenerated kernel
    for stale in GEN_PATH.parent.glob("__pycache__/*.nb[ic]"):
        stale.unlink()
    print(f"wrote {GEN_PATH}")
