import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

import time
from contextlib import contextmanager

import pytest

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Context manager that times an acceptance criterion and records PASS/FAIL for the summary."""

    @contextmanager
    def run(number, label, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            if ok and elapsed > limit:
                ok = False
            status = "PASS" if ok else "FAIL"
            line = f"{status} criterion {number}: {label} ({elapsed:.2f}s, limit {limit:g}s)"
            _CRITERIA[str(number)] = line
            print(line)
        assert elapsed <= limit, f"criterion {number} took {elapsed:.2f}s, limit {limit:g}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA, key=lambda k: (int(k.split()[0]), k)):
            terminalreporter.write_line(_CRITERIA[number])
