import pytest

REPORT: list[str] = []


@pytest.fixture
def report():
    """Append a one-line verdict that is echoed in the terminal summary."""
    return REPORT.append


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
