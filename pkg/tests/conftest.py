import random
from fractions import Fraction as Fr

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ordkant.instances import chain, antichain, point, random_space

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_space(seed, lo=1, hi=6):
    rng = random.Random(seed)
    return rng, random_space(rng, rng.randint(lo, hi))


@pytest.fixture
def ch():
    return chain()


@pytest.fixture
def anti():
    return antichain()


@pytest.fixture
def pt():
    return point()


@pytest.fixture
def half():
    return Fr(1, 2)


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
