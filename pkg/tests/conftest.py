import random
from math import gcd

import pytest
from hypothesis import strategies as st

from itknot import Frame, validate


@st.composite
def cprime_tuples(draw, r_max=6, q_max=7, p_max=20):
    """Valid cabling-framing tuples of either sign."""
    r = draw(st.integers(1, r_max))
    out = []
    for i in range(r):
        q = draw(st.integers(2, q_max))
        lo = 2 if i == 0 else 1
        p = draw(
            st.integers(-p_max, p_max).filter(lambda p, q=q, lo=lo: abs(p) >= lo and gcd(p, q) == 1)
        )
        out.append((p, q))
    return out


@st.composite
def positive_knots(draw, r_max=4, q_max=5, p_max=30):
    r = draw(st.integers(1, r_max))
    out = []
    for i in range(r):
        q = draw(st.integers(2, q_max))
        lo = 2 if i == 0 else 1
        big = draw(st.integers(lo, p_max).filter(lambda P, q=q: gcd(P, q) == 1))
        out.append((big, q))
    return validate(out, Frame.C)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
