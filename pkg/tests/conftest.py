from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(height: int = 10, nonzero: bool = False):
    num = st.integers(-height, height)
    if nonzero:
        num = num.filter(bool)
    return st.builds(Fraction, num, st.integers(1, height))


def vectors(n: int, height: int = 10):
    return st.lists(rationals(height), min_size=n, max_size=n).map(tuple)


def F(*xs):
    return tuple(Fraction(x) for x in xs)


CRITERION_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)
