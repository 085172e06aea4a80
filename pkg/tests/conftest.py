import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion and assert it."""

    def record(number, title, ok, detail=""):
        _LINES.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        assert ok, f"criterion {number} ({title}): {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
