import random
from fractions import Fraction

import pytest
from hypothesis import settings

from hkmoduli.gaussian import GR
from hkmoduli.projective import MobiusMap

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rand_gr(rng: random.Random, num=6, den=4) -> GR:
    return GR(Fraction(rng.randint(-num, num), rng.randint(1, den)), Fraction(rng.randint(-num, num), rng.randint(1, den)))


def rand_mobius(rng: random.Random) -> MobiusMap:
    while True:
        entries = [GR(rng.randint(-3, 3), rng.randint(-2, 2)) for _ in range(4)]
        a, b, c, d = entries
        if a * d - b * c != 0:
            return MobiusMap(*entries)


@pytest.fixture
def rng():
    return random.Random(20170127)
