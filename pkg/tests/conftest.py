import time
from contextlib import contextmanager

import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion; a PASS/FAIL line is printed at the end of the run."""

    @contextmanager
    def record(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            _CRITERIA.append((number, title, "FAIL", time.perf_counter() - start, repr(exc)[:200]))
            raise
        _CRITERIA.append((number, title, "PASS", time.perf_counter() - start, ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, elapsed, detail in sorted(_CRITERIA):
        line = f"[{status}] criterion {number}: {title} ({elapsed:.2f} s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)
