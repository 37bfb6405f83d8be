import pytest

_LINES: list[str] = []


@pytest.fixture
def report_line():
    """Record one ``CRITERION ... PASS/FAIL`` line for the terminal summary."""

    def add(criterion: str, ok: bool, detail: str):
        line = f"{criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        _LINES.append(line)
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
