"""Shared pytest hooks.

Acceptance tests register one line per criterion through the ``criterion``
fixture; the lines are printed together at the end of the session.
"""

import time

import pytest

_LINES: dict[int, str] = {}


class _Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""
        self.ok = None
        self._t0 = time.perf_counter()

    def finish(self, ok: bool, detail: str = "") -> float:
        elapsed = time.perf_counter() - self._t0
        self.ok = bool(ok) and elapsed < self.limit
        self.detail = detail
        status = "PASS" if self.ok else "FAIL"
        _LINES[self.number] = (
            f"[{status}] criterion {self.number}: {self.title} "
            f"({elapsed:.2f}s, limit {self.limit:g}s){' - ' + detail if detail else ''}"
        )
        return elapsed


@pytest.fixture
def criterion(request):
    made = []

    def start(number: int, title: str, limit: float) -> _Criterion:
        c = _Criterion(number, title, limit)
        made.append(c)
        return c

    yield start
    for c in made:
        if c.ok is None:  # the test raised before reporting
            _LINES[c.number] = f"[FAIL] criterion {c.number}: {c.title} (error before completion)"


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
