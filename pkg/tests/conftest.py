"""Collects the acceptance lines so they appear in the terminal summary."""

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(criterion: int, ok: bool, seconds: float, limit: float, detail: str = "") -> None:
        within = seconds < limit
        status = "PASS" if ok and within else "FAIL"
        line = f"criterion {criterion:>2}: {status}  {seconds:8.2f} s (limit {limit:g} s)  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
        assert within, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
