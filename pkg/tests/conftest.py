import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from _registry import RESULTS  # noqa: E402
from linperm import make_field  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, secs, note = RESULTS[num]
        terminalreporter.write_line(
            f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s) {note}")


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 1, 2)


@pytest.fixture(scope="session")
def f27():
    return make_field(3, 1, 3)


@pytest.fixture(scope="session")
def f125():
    return make_field(5, 1, 3)


@pytest.fixture(scope="session")
def f81():
    return make_field(3, 1, 4)


@pytest.fixture(scope="session")
def f243():
    return make_field(3, 1, 5)


@pytest.fixture(scope="session")
def f729_tower():
    # q = 9, n = 3
    return make_field(3, 2, 3)
