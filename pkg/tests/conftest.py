import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyperrel import Hypergraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def hypergraphs(draw, min_n=2, max_n=7, max_m=9, max_rank=None):
    n = draw(st.integers(min_n, max_n))
    top = min(n, max_rank or n)
    m = draw(st.integers(0, max_m)) if top >= 2 else 0
    edges = []
    for _ in range(m):
        r = draw(st.integers(2, top))
        edges.append(draw(st.lists(st.integers(0, n - 1), min_size=r, max_size=r, unique=True)))
    return Hypergraph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
