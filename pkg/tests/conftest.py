import math

import pytest

from feynman_verify.quadrature import QuadConfig

BASEL = math.pi ** 2 / 6


@pytest.fixture
def config():
    return QuadConfig()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
