import cmath
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from uq2.qcomb import QParam  # noqa: E402

Q_SMALL = QParam(0.5 + 0.25j)
Q_UNIT = QParam(cmath.exp(1.0j))
Q_LARGE = QParam(1 / (0.5 + 0.25j))


@pytest.fixture
def q_small():
    return Q_SMALL


@pytest.fixture
def q_unit():
    return Q_UNIT


@pytest.fixture(params=[Q_SMALL, Q_UNIT], ids=["q_small", "q_unit"])
def q_haar(request):
    """Parameters at which the Haar state is evaluated directly."""
    return request.param


@pytest.fixture(params=[Q_SMALL, Q_UNIT, Q_LARGE], ids=["q_small", "q_unit", "q_large"])
def q_any(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
