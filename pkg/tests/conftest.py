import pytest

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Shared sink for the per-criterion result lines."""
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
