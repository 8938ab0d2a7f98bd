import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from opialkit import Interval, builtin_family

settings.register_profile(
    "opialkit", deadline=None, max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("opialkit")


@pytest.fixture
def unit():
    return Interval(0.0, 1.0)


@pytest.fixture
def one(unit):
    return builtin_family("const:1", unit)


def rel_err(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


#: (criterion, PASS/FAIL, detail) lines from test_acceptance, echoed at the end
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line[1])
