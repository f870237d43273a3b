import pytest

from gravreduce.core import Body, PhysicalContext, WavePacket

# Acceptance criteria results, printed as a summary block at session end.
_ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    line = f"acceptance criterion {number}: {status}"
    if detail:
        line += f"  ({detail})"
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def ctx():
    return PhysicalContext.dimensionless()


@pytest.fixture
def packet():
    return WavePacket(1.0)


@pytest.fixture
def point():
    return Body.point(1.0)


@pytest.fixture
def sphere():
    return Body.sphere(1.0, 1.0)
