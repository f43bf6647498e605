import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from switchdwell.dwellflee import CASES, build_pair
from switchdwell.sampling import random_pair

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

RC_A1 = [[-0.1, 0.0], [0.4, -0.2]]
RC_A2 = [[0.0, 1.0], [-2.0, 1.0]]
NR_A1 = [[-0.1, 2 ** 0.5], [0.0, -0.1]]
NR_A2 = [[0.1, 0.0], [-0.4, 0.2]]
NN_A1 = [[-0.1, 1.0], [0.0, -0.1]]
NN_A2 = [[-2.8, 9.0], [-1.0, 3.2]]
NN_LENGTHS = [90.71, 6.26, 90.3, 9.69, 88.21, 6.88, 89.63, 9.91, 88.56, 7.12, 90.05, 6.96]

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def rc_pair():
    return build_pair(RC_A1, RC_A2)


@pytest.fixture(scope="session")
def nr_pair():
    return build_pair(NR_A1, NR_A2)


@pytest.fixture(scope="session")
def nn_pair():
    return build_pair(NN_A1, NN_A2)


@pytest.fixture(scope="session")
def sample_pairs():
    """Twenty random pairs per case, fixed seed."""
    rng = np.random.default_rng(20240611)
    return {case: [random_pair(case, rng) for _ in range(20)] for case in CASES}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {msg}")
