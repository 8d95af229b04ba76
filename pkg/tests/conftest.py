import math

import pytest

from wedgestark.model import WedgeGeometry

ACCEPTANCE_LINES = []


@pytest.fixture
def reference_wedge():
    """d = 10 a*, theta0 = pi/20, L = 1 a*."""
    return WedgeGeometry(10.0, math.pi / 20, 1.0)


@pytest.fixture
def half_disk():
    return WedgeGeometry(1.0, math.pi, 1.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
