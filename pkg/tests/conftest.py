import pytest
from hypothesis import settings

from leipnik.model import PacketSpec

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def unit_spec():
    return PacketSpec(mass=1.0, hbar=1.0, sigma=1.0, p0=0.0, x0=0.0, force=0.0)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line: (label, measured, tolerance, passed)."""

    def record(label, measured, tolerance, passed):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label:<52} measured={measured:.3e}  tol={tolerance:.0e}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
