import time

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_CRITERIA: dict = {}


class Criterion:
    """Times one acceptance criterion and records its outcome."""

    def __init__(self, number: int, title: str, budget: float | None):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""
        self.passed = False
        self.elapsed = 0.0

    def __enter__(self):
        self._t0 = time.perf_counter()
        _CRITERIA[self.number] = self
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self._t0
        in_budget = self.budget is None or self.elapsed < self.budget
        self.passed = exc_type is None and in_budget
        if exc_type is not None and not self.detail:
            self.detail = f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"[:120]
        line = self.line()
        print(line)
        if exc_type is None and not in_budget:
            raise AssertionError(f"criterion {self.number} over budget: {self.elapsed:.1f}s >= {self.budget}s")
        return False

    def line(self) -> str:
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number}: {self.title}; {self.detail} [{self.elapsed:.2f}s{budget}]"


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n].line())
