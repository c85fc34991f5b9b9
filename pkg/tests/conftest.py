import pytest

from axialqc.state import ASDensityMatrix
from axialqc.thermal import HamiltonianParams

BENCH2 = dict(B1=0.3, B2=-0.7, J=0.0, Jz=1.0, K=0.2, K1=-0.1, K2=0.22,
            Dz=0.32, Gamma=-0.87, Lambda=0.31)
BENCH3 = {**BENCH2, "J": -1.4}
BENCH4 = {**BENCH3, "B1": 0.7, "B2": 0.3, "J": -0.7}
BENCH5 = {**BENCH3, "B2": 0.0, "J": -2.5, "Jz": -1.0}
BENCH6 = {**BENCH5, "B1": 0.0}

# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def hand_state():
    """p1 = p6 = 1/8, a = c = 1/4, u = 1/4, b = d = 1/8, v = 0."""
    return ASDensityMatrix(1 / 8, 1 / 4, 1 / 8, 1 / 4, 1 / 8, 1 / 8, 1 / 4, 0)


@pytest.fixture
def bench3_params():
    return HamiltonianParams(**BENCH3)
