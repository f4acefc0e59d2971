import logging

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from icl.graphs import Digraph, UndirectedGraph, directed_complement

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")

logging.getLogger("icl.config").setLevel(logging.ERROR)


@st.composite
def digraphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, frozenset(chosen))


@pytest.fixture
def three_user():
    """Three users; user 0 holds packets 1 and 2, the others hold nothing."""
    return Digraph(3, frozenset({(0, 1), (0, 2)}))


@pytest.fixture
def c5_bidirected():
    return UndirectedGraph.cycle(5).as_digraph()


@pytest.fixture
def c5_side_info(c5_bidirected):
    """Side information whose interference graph is the bidirected 5-cycle."""
    return directed_complement(c5_bidirected)


@pytest.fixture
def dicycle3():
    return Digraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
