"""Closed-loop linearization, limit-cycle detection and KPIs over simulation logs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import uniform_filter1d
from scipy.signal import find_peaks

from .control import ControllerConfig, control_wrench
from .errors import NotAnEquilibrium

EPS_RE = 1e-3
EQ_TOL = 1e-8
FD_STEP = 1e-6
CONVERGE_TOL = 1e-3


class Stability(str, enum.Enum):
    STRICTLY_STABLE = "StrictlyStable"
    MARGINAL_IMAGINARY = "MarginalImaginary"
    UNSTABLE = "Unstable"


@dataclass
class LinearizationResult:
    A: np.ndarray
    eigenvalues: np.ndarray
    classification: list[Stability]
    x_eq: np.ndarray

    def count(self, kind: Stability) -> int:
        return sum(c is kind for c in self.classification)

    @property
    def all_stable(self) -> bool:
        return all(c is Stability.STRICTLY_STABLE for c in self.classification)


def closed_loop_field(cfg: ControllerConfig, x) -> np.ndarray:
    """ẋ = (q̇, M⁻¹(J_uᵀ u(x) − C q̇ − g)) on the controller's own model."""
    model = cfg.model
    n = model.ndof
    q, dq = x[:n], x[n:]
    u, _ = control_wrench(cfg, q, dq)
    return np.concatenate([dq, model.accel(q, dq, u)])


def classify(eigenvalues, eps_re: float = EPS_RE) -> list[Stability]:
    """Marginal when |Re λ| / |λ| < eps_re.

    Normalizing by each eigenvalue's own magnitude (its damping ratio) keeps a
    slow, well-damped pair from reading as marginal next to a stiff pole.
    """
    out = []
    for lam in eigenvalues:
        mag = abs(lam)
        re = lam.real / mag if mag > 0 else 0.0
        if abs(re) < eps_re:
            out.append(Stability.MARGINAL_IMAGINARY)
        elif re < 0:
            out.append(Stability.STRICTLY_STABLE)
        else:
            out.append(Stability.UNSTABLE)
    return out


def linearize(cfg: ControllerConfig, x_eq=None, step: float = FD_STEP,
              eps_re: float = EPS_RE) -> LinearizationResult:
    """Central-difference Jacobian of the matched closed loop at an equilibrium."""
    n = cfg.model.ndof
    x_eq = np.zeros(2 * n) if x_eq is None else np.asarray(x_eq, dtype=float)
    residual = float(np.linalg.norm(closed_loop_field(cfg, x_eq)))
    if residual > EQ_TOL:
        raise NotAnEquilibrium(residual)
    A = np.empty((2 * n, 2 * n))
    for j in range(2 * n):
        e = np.zeros(2 * n)
        e[j] = step
        A[:, j] = (closed_loop_field(cfg, x_eq + e) - closed_loop_field(cfg, x_eq - e)) / (2 * step)
    lam = np.linalg.eigvals(A)
    lam = lam[np.lexsort((lam.imag, lam.real))]
    return LinearizationResult(A=A, eigenvalues=lam, classification=classify(lam, eps_re), x_eq=x_eq)


@dataclass
class LimitCycle:
    amplitude: float
    period: float


@dataclass
class Converged:
    max_abs: float


@dataclass
class Inconclusive:
    reason: str


def detect_limit_cycle(t, signal, settle_window: float = 10.0, min_cycles: int = 3,
                       converge_tol: float = CONVERGE_TOL, variation: float = 0.10):
    """Classify the trailing part of a signal (after ``settle_window`` seconds)."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(signal, dtype=float)
    tail = t >= t[0] + settle_window
    tt, xx = t[tail], x[tail]
    if len(xx) < 3:
        return Inconclusive("signal shorter than the settle window")
    max_abs = float(np.max(np.abs(xx)))
    if max_abs < converge_tol:
        return Converged(max_abs)
    hi, _ = find_peaks(xx)
    lo, _ = find_peaks(-xx)
    n = min(len(hi), len(lo))
    if n < min_cycles + 1:
        return Inconclusive(f"only {n} cycles in the trailing window")
    hi, lo = hi[:n], lo[:n]
    amps = (xx[hi] - xx[lo]) / 2.0
    amplitude = float(np.mean(amps))
    if amplitude <= converge_tol:
        return Inconclusive("oscillation below the convergence tolerance but not settled")
    rel = np.abs(np.diff(amps)) / amplitude
    if np.any(rel >= variation):
        return Inconclusive("cycle amplitude not steady")
    period = float(np.mean(np.diff(tt[hi])))
    return LimitCycle(amplitude=amplitude, period=period)


def response_time(t, signal, reference: float = 0.0, band_fraction: float = 0.01):
    """First time after which |x − ref| stays inside band_fraction · max|x − ref|.

    Returns None when the signal is still outside the band at the last sample.
    """
    t = np.asarray(t, dtype=float)
    e = np.abs(np.asarray(signal, dtype=float) - reference)
    if len(e) < 2:
        raise ValueError("response_time needs at least two samples")
    peak = float(np.max(e))
    if peak == 0.0:
        return 0.0
    outside = np.nonzero(e > band_fraction * peak)[0]
    last = outside[-1]
    if last == len(e) - 1:
        return None
    return float(t[last + 1] - t[0])


def peak_response(signal, reference: float = 0.0) -> float:
    """Signed largest excursion of the first transient.

    Off-reference start: the extremum of the first lobe past the reference,
    i.e. the first overshoot; without a crossing, the initial deviation.
    At-reference start: the extremum of the first lobe that leaves it.
    """
    e = np.asarray(signal, dtype=float) - reference
    if e[0] == 0.0:
        nz = np.nonzero(e)[0]
        if len(nz) == 0:
            return 0.0
        start = nz[0]
    else:
        sign0 = np.sign(e[0])
        crossed = np.nonzero(np.sign(e) == -sign0)[0]
        if len(crossed) == 0:
            return float(e[0])
        start = crossed[0]
    s = np.sign(e[start])
    back = np.nonzero(np.sign(e[start:]) == -s)[0]
    lobe = e[start:start + back[0]] if len(back) else e[start:]
    return float(lobe[np.argmax(np.abs(lobe))])


def snr(signal, dt: float, smoothing_window: float = 0.1, warmup: float | None = None) -> float:
    """10 log10(Σs²/Σn²) with s the moving average of the signal and n the residual.

    The first ``warmup`` seconds (default: one smoothing window) are dropped
    before the ratio is formed. The controller's first sample is a step from
    rest that no moving average can follow, and on a noise-free log it would
    otherwise account for nearly all of the residual.
    """
    x = np.asarray(signal, dtype=float)
    width = max(1, int(round(smoothing_window / dt)))
    skip = width if warmup is None else int(round(warmup / dt))
    if len(x) <= width + skip:
        raise ValueError("signal shorter than the smoothing window plus warm-up")
    s = uniform_filter1d(x, size=width, mode="nearest")
    n = (x - s)[skip:]
    s = s[skip:]
    pn = float(np.sum(n * n))
    ps = float(np.sum(s * s))
    if pn == 0.0:
        return math.inf
    if ps == 0.0:
        return -math.inf
    return 10.0 * math.log10(ps / pn)


@dataclass
class KpiReport:
    response_time: dict[str, float | None] = field(default_factory=dict)
    peak_response: dict[str, float] = field(default_factory=dict)
    snr: dict[str, float] = field(default_factory=dict)

    def rows(self):
        for j in self.response_time:
            yield j, "response_time", self.response_time[j]
            yield j, "peak_response", self.peak_response[j]
        for c, v in self.snr.items():
            yield c, "snr_db", v


WRENCH_CHANNELS = ("Fx", "Fy", "tau_z")


def kpi_report(t, q, u, joints=("q4", "q5"), channels=WRENCH_CHANNELS,
               smoothing_window: float = 0.1, warmup: float | None = None) -> KpiReport:
    """KPIs over logged arrays; ``joints`` are 'qN' names, ``channels`` wrench column names."""
    t = np.asarray(t, dtype=float)
    q = np.atleast_2d(np.asarray(q, dtype=float))
    u = np.atleast_2d(np.asarray(u, dtype=float))
    dt = float(t[1] - t[0])
    rep = KpiReport()
    for j in joints:
        x = q[:, int(j[1:]) - 1]
        rep.response_time[j] = response_time(t, x)
        rep.peak_response[j] = peak_response(x)
    names = WRENCH_CHANNELS if u.shape[1] == 3 else ("tau",)
    for c in channels:
        rep.snr[c] = snr(u[:, names.index(c)], dt, smoothing_window, warmup)
    return rep
