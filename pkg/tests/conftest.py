import random

import pytest

from padic_wavelets.padic import PAdicRational


@pytest.fixture
def rng():
    return random.Random(1234)


def pv(p, *xs):
    """Vector of p-adic rationals from ints, Fractions or strings."""
    return tuple(PAdicRational.coerce(p, x) for x in xs)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
