import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from planemoduli.cyclofield import CycloNum, euler_phi

settings.register_profile(
    "default",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

SMALL_CONDUCTORS = (1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24)


@st.composite
def cyclo_nums(draw, conductors=SMALL_CONDUCTORS, height=5):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(st.integers(-height, height), min_size=euler_phi(n), max_size=euler_phi(n)))
    den = draw(st.integers(1, 4))
    return CycloNum(n, coeffs) / den


@pytest.fixture
def rng():
    return random.Random(12345)


CRITERION_LINES: list[str] = []


@pytest.fixture
def report_line():
    return CRITERION_LINES.append


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
