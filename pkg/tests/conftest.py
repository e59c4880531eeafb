import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ratmoduli import RationalMap

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rmap(num, den):
    return RationalMap(num, den)


@pytest.fixture
def triple_cubic():
    # simple fixed point at 0, triple one at -1
    return RationalMap([0, -2, -4, -3], [-1, -1, 0, 1])


@pytest.fixture
def n3_point():
    return RationalMap([0, 1, -1], [1, -1, 1])


@pytest.fixture
def double_point():
    return RationalMap([0, 0, 1], [1, -1, 1])


def close(a, b, tol=1e-12):
    return np.allclose(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex), atol=tol, rtol=0)


@pytest.fixture
def report(request):
    """Record one acceptance line; all lines are repeated in the terminal summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def _report(line):
        print(line)
        lines.append(line)

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
