import pytest

_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _LINES


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(set(_LINES)):
        terminalreporter.write_line(line)
    passed = sum(l.startswith("[PASS]") for l in set(_LINES))
    terminalreporter.write_line(f"{passed}/{len(set(_LINES))} criteria passed")
