import numpy as np
import pytest

from degroot_cycles import validate_stochastic

from instances import EXAMPLE_P

_ACCEPTANCE = []


@pytest.fixture
def example_P():
    return validate_stochastic(EXAMPLE_P)


@pytest.fixture
def rng():
    return np.random.default_rng(20110520)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
