import pytest
from hypothesis import given
from hypothesis import strategies as st

from restless.core import Query, StaticGraph, TemporalGraph, is_forest, low_degree_reduce, underlying_graph, \
    validate_witness
from restless.fes_solver import arrival_step, arrival_times_on_path, fes_decompose, fes_solve
from restless.oracle import brute_force

from .conftest import instances


def test_arrival_path_example():
    # s=0, v=1, z=2; {s,v} at 1 and 3, {v,z} at 2 and 5
    g = TemporalGraph(3, 5, ((0, 1, 1), (0, 1, 3), (1, 2, 2), (1, 2, 5)))
    assert arrival_times_on_path(g, Query(0, 2, 1)) == [2]


def test_arrival_single_edge():
    assert arrival_times_on_path(TemporalGraph(2, 4, ((0, 1, 4),)), Query(0, 1, 0)) == [4]


def test_arrival_monotone():
    g = TemporalGraph(3, 5, ((0, 1, 4), (0, 1, 5), (1, 2, 1), (1, 2, 2)))
    assert arrival_times_on_path(g, Query(0, 2, 5)) == []


def test_arrival_rejects_non_path():
    g = TemporalGraph(4, 1, ((0, 1, 1), (1, 2, 1), (1, 3, 1)))
    with pytest.raises(ValueError):
        arrival_times_on_path(g, Query(0, 2, 0))


def test_arrival_step():
    assert arrival_step(None, [3, 4], 0) == [3, 4]
    assert arrival_step([1, 5], [1, 2, 3, 6, 9], 1) == [1, 2, 6]


@given(st.lists(st.sets(st.integers(1, 6), min_size=1), min_size=1, max_size=6), st.integers(0, 6))
def test_arrival_matches_oracle_on_paths(hops, delta):
    n = len(hops) + 1
    h = TemporalGraph(n, 6, tuple((i, i + 1, t) for i, ts in enumerate(hops) for t in ts))
    q = Query(0, n - 1, delta)
    assert set(arrival_times_on_path(h, q)) == brute_force(h, q).arrival_times


def test_decompose_fig1(fig):
    dec = fes_decompose(underlying_graph(fig[0]), 0, 5)
    assert len(dec.feedback_edges) == 3


def test_decompose_tree():
    g = StaticGraph(5, ((0, 1), (1, 2), (1, 3), (3, 4)))
    dec = fes_decompose(g, 0, 4)
    assert dec.feedback_edges == []
    assert sorted(map(tuple, dec.connecting_paths)) == [(0, 1), (1, 2), (1, 3, 4)]


def test_decompose_cycle():
    g = StaticGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    dec = fes_decompose(g, 0, 2)
    assert len(dec.feedback_edges) == 1
    covered = {frozenset(e) for p in dec.connecting_paths for e in zip(p, p[1:])}
    assert covered | {frozenset(dec.feedback_edges[0])} == {frozenset(e) for e in g.edges}


@given(instances())
def test_decomposition_invariants(inst):
    g, q = inst
    h = underlying_graph(low_degree_reduce(g, q))
    dec = fes_decompose(h, q.source, q.target)
    rest = [e for e in h.edges if e not in set(dec.feedback_edges)]
    assert is_forest(h.n, rest)
    assert len(dec.connecting_paths) <= 5 * len(dec.feedback_edges) + 4
    path_edges = [frozenset(e) for p in dec.connecting_paths for e in zip(p, p[1:])]
    assert len(path_edges) == len(set(path_edges))
    assert set(path_edges) | {frozenset(e) for e in dec.feedback_edges} == {frozenset(e) for e in h.edges}
    assert not set(path_edges) & {frozenset(e) for e in dec.feedback_edges}


def test_fes_fig1(fig):
    g, _ = fig
    r = fes_solve(g, Query(0, 5, 2))
    assert r.answer and validate_witness(g, Query(0, 5, 2), r.witness)[0]
    assert r.num_feedback == 3


def test_fes_forest_single_candidate():
    g = TemporalGraph(4, 3, ((0, 1, 1), (1, 2, 2), (2, 3, 3)))
    r = fes_solve(g, Query(0, 3, 1))
    assert r.answer and r.num_feedback == 0 and r.candidates == 1


def test_fes_disconnected():
    g = TemporalGraph(4, 2, ((0, 1, 1), (2, 3, 1)))
    assert not fes_solve(g, Query(0, 3, 2)).answer


@given(instances(bounded=True))
def test_fes_matches_oracle(inst):
    g, q = inst
    r = fes_solve(g, q)
    assert r.answer == brute_force(g, q).exists
    if r.answer:
        assert validate_witness(g, q, r.witness)[0]
