import numpy as np
import pytest

from tukeyregion import PointCloud, generate_gaussian

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def square():
    return PointCloud(SQUARE)


@pytest.fixture
def gauss():
    return generate_gaussian


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
