import pytest

from clausenlab import make_context

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def ctx50():
    return make_context(50)


@pytest.fixture
def ctx32():
    return make_context(32)


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
