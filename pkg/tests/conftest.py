from __future__ import annotations

import pytest

_LINES: list[str] = []


class Recorder:
    """Collects one PASS/FAIL line per acceptance check and asserts it."""

    def check(self, label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        _LINES.append(line)
        print(line)
        assert ok, line


@pytest.fixture(scope="session")
def acceptance() -> Recorder:
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
