import numpy as np
import pytest

from resonant_periodic.model import ProblemParams

ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def _record(number, passed, detail=""):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def base_params():
    return ProblemParams(-0.1, 0.1, 1.0)
