import numpy as np
import pytest
from hypothesis import strategies as st

from suspended_pfl.dynamics import make_model
from suspended_pfl.model import default_params

# Random workspace draws: every angle in [-1.2, 1.2] keeps q2, q5 clear of pi/2.
Q_LIM = 1.2
DQ_LIM = 2.0

ACCEPTANCE_LINES: list[str] = []


def random_state(rng, n):
    return rng.uniform(-Q_LIM, Q_LIM, n), rng.uniform(-DQ_LIM, DQ_LIM, n)


def states(n):
    angle = st.floats(-Q_LIM, Q_LIM, allow_nan=False)
    rate = st.floats(-DQ_LIM, DQ_LIM, allow_nan=False)
    return st.tuples(
        st.lists(angle, min_size=n, max_size=n).map(np.array),
        st.lists(rate, min_size=n, max_size=n).map(np.array),
    )


@pytest.fixture(scope="session")
def full():
    return make_model(default_params(), "full")


@pytest.fixture(scope="session")
def planar():
    return make_model(default_params(), "planar")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session", autouse=True)
def _compiled():
    """Compile (or load) the numba kernels once, before anything is timed."""
    from suspended_pfl.control import ControllerConfig
    from suspended_pfl.sim import NoiseConfig, DisturbanceProfile, ScenarioConfig, run

    run(ScenarioConfig(duration=0.01, noise=NoiseConfig(), wind=DisturbanceProfile(0.0, 0.005)))
    run(ScenarioConfig(model="planar", controller=ControllerConfig(kind="planar"),
                       q0=[0.2, 0.0], duration=0.01))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
