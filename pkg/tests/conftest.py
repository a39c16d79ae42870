import time

import pytest

from kappa_lab.probabilities import clear_caches

_RESULTS = []


class Criterion:
    """Collects named sub-checks and wall time for one acceptance criterion."""

    def __init__(self, number: int, title: str, limit_s: float):
        self.number = number
        self.title = title
        self.limit_s = limit_s
        self.checks: list[tuple[str, bool]] = []
        self.elapsed = None
        self._start = None

    def __enter__(self):
        clear_caches()  # time from a cold start
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self._start
        self.check(f"runtime {self.elapsed:.1f} s < {self.limit_s:g} s", self.elapsed < self.limit_s)
        return False

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return ok

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok in self.checks)

    def assert_all(self):
        failed = [name for name, ok in self.checks if not ok]
        assert not failed, f"criterion {self.number} failed: {failed}"


@pytest.fixture
def criterion():
    def make(number: int, title: str, limit_s: float) -> Criterion:
        c = Criterion(number, title, limit_s)
        _RESULTS.append(c)
        return c

    return make


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(_RESULTS, key=lambda c: c.number):
        took = "" if c.elapsed is None else f" ({c.elapsed:.1f} s)"
        tr.write_line(f"{'PASS' if c.passed else 'FAIL'}  criterion {c.number}: {c.title}{took}")
        for name, ok in c.checks:
            tr.write_line(f"        {'ok  ' if ok else 'FAIL'}  {name}")
