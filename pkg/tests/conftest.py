import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from restless.core import Query, TemporalGraph, fig1

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def fig():
    """The running example with its name map."""
    return fig1()


@st.composite
def temporal_graphs(draw, max_n=7, max_lifetime=5, min_n=2):
    n = draw(st.integers(min_n, max_n))
    lifetime = draw(st.integers(1, max_lifetime))
    triples = [(u, v, t) for u, v in itertools.combinations(range(n), 2) for t in range(1, lifetime + 1)]
    chosen = draw(st.lists(st.sampled_from(triples), max_size=3 * n, unique=True)) if triples else []
    return TemporalGraph(n, lifetime, tuple(chosen))


@st.composite
def instances(draw, max_n=7, max_lifetime=5, bounded=False):
    """A temporal graph with a query on it, optionally with a length bound."""
    g = draw(temporal_graphs(max_n=max_n, max_lifetime=max_lifetime))
    s, z = draw(st.lists(st.integers(0, g.n - 1), min_size=2, max_size=2, unique=True))
    delta = draw(st.integers(0, g.lifetime))
    k = draw(st.integers(0, g.n - 1)) if bounded else None
    return g, Query(s, z, delta, k)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
