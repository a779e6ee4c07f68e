import pytest

from bai_lab._accel import HAS_NUMBA

BACKENDS = ["numpy"] + (["numba"] if HAS_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
