import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from suspended_pfl.analysis import (
    Converged, Inconclusive, LimitCycle, Stability, classify, detect_limit_cycle, kpi_report,
    linearize, peak_response, response_time, snr,
)
from suspended_pfl.control import ControllerConfig
from suspended_pfl.errors import NotAnEquilibrium

DT = 1e-3

# Coupled full-model spectrum at rest with the nominal gains, frozen from the first verified run.
FULL_COUPLED_EIGS = np.array([
    -676.97862085948532, -676.97862085948486, -143.56353799813368, -3.0640279842708518,
    -3.0484141602324031, -3.0484141602322765,
    -0.59381803335603611 - 2.9406299399644262j, -0.59381803335603611 + 2.9406299399644262j,
    -0.59381803335602923 - 2.940629939964368j, -0.59381803335602923 + 2.940629939964368j,
])


def _t(duration):
    return np.arange(int(round(duration / DT)) + 1) * DT


@pytest.fixture(scope="module")
def planar_lin():
    return {m: linearize(ControllerConfig(kind="planar", mode=m)) for m in ("standard", "coupled")}


def test_planar_standard_has_one_marginal_pair(planar_lin):
    res = planar_lin["standard"]
    assert res.count(Stability.MARGINAL_IMAGINARY) == 2
    assert res.count(Stability.STRICTLY_STABLE) == 2
    marginal = res.eigenvalues[[c is Stability.MARGINAL_IMAGINARY for c in res.classification]]
    assert marginal[0] == pytest.approx(np.conj(marginal[1]), abs=1e-9)


def test_planar_coupled_is_strictly_stable(planar_lin):
    assert planar_lin["coupled"].all_stable


def test_coupling_moves_the_marginal_pair_left(planar_lin):
    std, cpl = planar_lin["standard"], planar_lin["coupled"]
    scale = np.max(np.abs(std.eigenvalues))
    marginal = std.eigenvalues[np.abs(std.eigenvalues.real) / scale < 1e-3]
    assert len(marginal) == 2
    # the slow oscillatory pair of the coupled loop sits strictly in the left half plane
    slow = cpl.eigenvalues[np.argsort(np.abs(cpl.eigenvalues.imag))[-2:]]
    assert np.all(slow.real <= -1e-3 * np.max(np.abs(cpl.eigenvalues)))
    assert np.all(std.eigenvalues[np.abs(std.eigenvalues.real) / scale >= 1e-3].real < 0)


@pytest.mark.parametrize("kind,mode", [("planar", "standard"), ("planar", "coupled"),
                                       ("full", "standard"), ("full", "coupled")])
def test_spectrum_is_conjugate_closed_and_sums_to_trace(kind, mode):
    res = linearize(ControllerConfig(kind=kind, mode=mode))
    lam = res.eigenvalues
    for x in lam[np.abs(lam.imag) > 1e-9]:
        assert np.min(np.abs(lam - np.conj(x))) < 1e-9
    assert lam.sum().real == pytest.approx(np.trace(res.A), rel=1e-6)


def test_full_coupled_spectrum_regression():
    res = linearize(ControllerConfig())
    assert np.all(res.eigenvalues.real < 0)
    assert res.all_stable
    np.testing.assert_allclose(np.sort_complex(res.eigenvalues), np.sort_complex(FULL_COUPLED_EIGS),
                               rtol=1e-6)


def test_linearize_rejects_non_equilibrium():
    x = np.zeros(4)
    x[0] = 0.1
    with pytest.raises(NotAnEquilibrium):
        linearize(ControllerConfig(kind="planar"), x)


def test_classify_thresholds():
    c = classify(np.array([-1 + 0j, 1e-5 + 2j, 0.5 + 0j, 0j]))
    assert c == [Stability.STRICTLY_STABLE, Stability.MARGINAL_IMAGINARY, Stability.UNSTABLE,
                 Stability.MARGINAL_IMAGINARY]


def test_decaying_oscillation_converges():
    t = _t(40)
    assert isinstance(detect_limit_cycle(t, np.exp(-t) * np.sin(3 * t)), Converged)


@given(st.floats(0.01, 0.5), st.floats(0.5, 5.0))
@settings(max_examples=25, deadline=None)
def test_sine_is_a_limit_cycle(amplitude, omega):
    t = _t(60)
    res = detect_limit_cycle(t, amplitude * np.sin(omega * t), settle_window=10.0)
    assert isinstance(res, LimitCycle)
    assert res.amplitude == pytest.approx(amplitude, rel=0.02)
    assert res.period == pytest.approx(2 * np.pi / omega, rel=0.02)


def test_growing_oscillation_is_inconclusive():
    t = _t(60)
    assert isinstance(detect_limit_cycle(t, 0.01 * np.exp(0.05 * t) * np.sin(2 * t)), Inconclusive)


def test_short_signal_is_inconclusive():
    t = _t(5)
    assert isinstance(detect_limit_cycle(t, np.sin(t), settle_window=10.0), Inconclusive)


def test_response_time_of_constant_at_reference_is_zero():
    t = _t(1)
    assert response_time(t, np.zeros_like(t)) == 0.0


def test_response_time_of_first_order_decay():
    t = _t(20)
    assert response_time(t, np.exp(-t)) == pytest.approx(math.log(100), abs=DT)


def test_response_time_undefined_when_never_settling():
    t = _t(10)
    assert response_time(t, np.sin(t)) is None


@given(st.floats(0.1, 3.0), st.floats(-2.0, 2.0).filter(lambda a: abs(a) > 1e-3))
@settings(max_examples=25, deadline=None)
def test_response_time_scales_with_time_constant(tau, amp):
    t = _t(30 * tau)
    assert response_time(t, amp * np.exp(-t / tau)) == pytest.approx(tau * math.log(100), abs=2 * DT)


def test_peak_of_monotone_decay_is_initial_deviation():
    t = _t(5)
    assert peak_response(-0.2 * np.exp(-t)) == -0.2


def test_peak_is_first_overshoot_with_sign():
    t = _t(20)
    x = -0.1 * np.exp(-0.5 * t) * np.cos(2 * t)
    lobe = (t > np.pi / 4) & (t < 3 * np.pi / 4)
    assert peak_response(x) == pytest.approx(np.max(x[lobe]))
    assert peak_response(x) > 0


def test_peak_from_rest_is_first_excursion():
    t = _t(10)
    x = -0.05 * np.sin(t) * np.exp(-t)
    assert peak_response(x) == pytest.approx(np.min(x))
    assert peak_response(np.zeros(10)) == 0.0


def test_snr_of_constant_is_noise_free():
    assert snr(np.full(1000, 3.0), DT) == math.inf


def test_snr_of_sine_plus_white_noise():
    rng = np.random.default_rng(1)
    t = _t(100)
    sigma = 0.1
    x = np.sin(2 * np.pi * 0.1 * t) + sigma * rng.standard_normal(t.size)
    # the moving average keeps 1/width of the noise variance and all of the slow sine
    width = 100
    expected = 10 * np.log10((0.5 + sigma ** 2 / width) / (sigma ** 2 * (1 - 1 / width)))
    assert snr(x, DT) == pytest.approx(expected, abs=1.0)


def test_snr_ignores_the_startup_step():
    t = _t(10)
    x = np.exp(-t / 2)
    x[0] = 50.0
    assert snr(x, DT) > 40
    assert snr(x, DT, warmup=0.0) < 20


def test_snr_rejects_short_signal():
    with pytest.raises(ValueError):
        snr(np.ones(150), DT)


def test_kpi_report_on_zero_log():
    t = _t(2)
    rep = kpi_report(t, np.zeros((t.size, 5)), np.zeros((t.size, 3)))
    assert rep.response_time == {"q4": 0.0, "q5": 0.0}
    assert rep.peak_response == {"q4": 0.0, "q5": 0.0}
    assert all(v == math.inf for v in rep.snr.values())
