import numpy as np
import pytest

from splitoct import SplitOctonion

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def random_octonion(rng) -> SplitOctonion:
    return SplitOctonion(rng.standard_normal(8))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
