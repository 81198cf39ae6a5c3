import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def small_rationals(lo=-6, hi=6, den=4):
    return st.builds(lambda k, q: Fraction(k, q), st.integers(lo * den, hi * den), st.sampled_from([1, 2, den]))


def rvec(d, **kw):
    return st.tuples(*[small_rationals(**kw)] * d)


@pytest.fixture
def F():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
