import random
from math import gcd

import pytest
from hypothesis import assume, strategies as st

from ratcycles.composition import AffineStep, Composition, parse_spec
from ratcycles.cycles import discriminant

MIXED4_SPEC = "q=3\nsteps=(-5,-2) (2,1) (7,6) (-1,-3)\n"
SEVEN_STEP_SPEC = "q=2\np=11\nword=T0 T0 T0 T0 S5 T0 S3\n"


@pytest.fixture
def mixed4():
    return parse_spec(MIXED4_SPEC)


@pytest.fixture
def seven_step():
    return parse_spec(SEVEN_STEP_SPEC)


Q_VALUES = [q for q in range(-5, 6) if q]
P_VALUES = [p for p in range(-9, 10) if p]


@st.composite
def compositions(draw, max_n=8):
    q = draw(st.sampled_from(Q_VALUES))
    n = draw(st.integers(1, max_n))
    ps = draw(st.lists(st.sampled_from([p for p in P_VALUES if gcd(p, q) == 1]),
                       min_size=n, max_size=n))
    ks = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    c = Composition(q, tuple(AffineStep(p, k) for p, k in zip(ps, ks)))
    assume(discriminant(c) != 0)
    return c


def random_compositions(count, seed=20240611, max_n=8):
    """Deterministic stream of valid compositions with D != 0."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.choice(Q_VALUES)
        n = rng.randint(1, max_n)
        allowed = [p for p in P_VALUES if gcd(p, q) == 1]
        steps = tuple(AffineStep(rng.choice(allowed), rng.randint(-9, 9)) for _ in range(n))
        c = Composition(q, steps)
        if discriminant(c) != 0:
            out.append(c)
    return out


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
