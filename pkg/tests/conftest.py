import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from bvsigma import pt

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CRITERIA_LINES: list = []


def record_criterion(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {title}" + (f" -- {detail}" if detail else "")
    CRITERIA_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES):
            terminalreporter.write_line(line)


def random_points(rng: random.Random, m: int, lo: int = -3, hi: int = 3, den: int = 1) -> list:
    pts = set()
    while len(pts) < m:
        pts.add(pt(Fraction(rng.randint(lo * den, hi * den), den), Fraction(rng.randint(lo * den, hi * den), den)))
    return sorted(pts)


@pytest.fixture
def rng():
    return random.Random(12345)
