import pytest

from casimir_neq import SystemConfig


@pytest.fixture
def au_drude():
    return SystemConfig.similar("Au", "drude", 20e-9, 1e-6)


@pytest.fixture
def ti_drude():
    return SystemConfig.similar("Ti", "drude", 20e-9, 1e-6)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
