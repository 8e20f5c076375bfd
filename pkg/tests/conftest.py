import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """record(n, ok, summary) stores one PASS/FAIL line per acceptance criterion."""
    def record(n: int, ok: bool, summary: str) -> bool:
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {summary}"
        _ACCEPTANCE[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
