import pytest
from hypothesis import given

from restless.core import GuardError, Query, TemporalGraph, path_from_vertices, underlying_graph
from restless.oracle import brute_force, brute_force_walk

from .conftest import instances


def test_fig1_shortest_is_sdbz(fig):
    g, ids = fig
    r = brute_force(g, Query(0, 5, 2))
    assert r.exists and r.shortest_length == 3
    assert r.shortest.vertices == [ids[c] for c in "sdbz"]


def test_fig1_enumerates_long_path(fig):
    g, ids = fig
    r = brute_force(g, Query(0, 5, 2), enumerate_all=True)
    assert [ids[c] for c in "sacdbz"] in [p.vertices for p in r.all_witnesses]
    assert r.arrival_times == {6}


def test_isolated_terminals():
    assert not brute_force(TemporalGraph(2, 1), Query(0, 1, 0)).exists


def test_enumeration_limit(fig):
    r = brute_force(fig[0], Query(0, 5, 2), enumerate_all=True, limit=1)
    assert len(r.all_witnesses) == 1


def test_guard():
    big = TemporalGraph(21, 1)
    with pytest.raises(GuardError):
        brute_force(big, Query(0, 1, 0))
    assert not brute_force(big, Query(0, 1, 0), force=True).exists
    with pytest.raises(GuardError):
        brute_force_walk(big, Query(0, 1, 0))


def test_guard_override(monkeypatch):
    monkeypatch.setenv("RTP_GUARD_OVERRIDE", "1")
    assert not brute_force(TemporalGraph(21, 1), Query(0, 1, 0)).exists


def test_walk_examples(fig):
    assert brute_force_walk(fig[0], Query(0, 5, 2))
    assert brute_force_walk(TemporalGraph(3, 1, ((0, 1, 1), (1, 2, 1))), Query(0, 2, 0))
    assert not brute_force_walk(TemporalGraph(3, 3, ((0, 1, 3), (1, 2, 1))), Query(0, 2, 3))


def test_walk_needs_revisit():
    # s=0 -> a=1 -> b=2 -> a -> z=3; the path s-a-z is blocked by waiting time
    g = TemporalGraph(4, 5, ((0, 1, 1), (1, 2, 2), (1, 2, 3), (1, 3, 4)))
    q = Query(0, 3, 1)
    assert brute_force_walk(g, q) and not brute_force(g, q).exists


@given(instances())
def test_path_implies_walk(inst):
    g, q = inst
    if brute_force(g, q).exists:
        assert brute_force_walk(g, q)


def _temporal_path_exists(g, s, z):
    """Unrestricted non-strict temporal paths: earliest arrival suffices."""
    best = {s: 0}
    for t in range(1, g.lifetime + 1):
        layer = [(u, v) for u, v, tt in g.time_edges if tt == t]
        changed = True
        while changed:
            changed = False
            for u, v in layer:
                for a, b in ((u, v), (v, u)):
                    if a in best and b not in best:
                        best[b] = t
                        changed = True
    return z in best


@given(instances())
def test_unbounded_delta_is_plain_temporal_path(inst):
    g, q = inst
    assert brute_force(g, Query(q.source, q.target, g.lifetime)).exists == _temporal_path_exists(g, q.source, q.target)


def _layer_connects(g, s, z):
    for t in range(1, g.lifetime + 1):
        h = TemporalGraph(g.n, 1, tuple((u, v, 1) for u, v, tt in g.time_edges if tt == t))
        adj = underlying_graph(h).adjacency()
        seen, todo = {s}, [s]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if z in seen:
            return True
    return False


@given(instances())
def test_zero_delta_is_single_layer(inst):
    g, q = inst
    assert brute_force(g, Query(q.source, q.target, 0)).exists == _layer_connects(g, q.source, q.target)


@given(instances(bounded=True))
def test_length_bound_and_shortest(inst):
    g, q = inst
    r = brute_force(g, q)
    full = brute_force(g, Query(q.source, q.target, q.delta))
    assert r.exists == (full.exists and full.shortest_length <= q.normalized(g).k)
    assert (r.shortest_length is not None) == r.exists


def test_witnesses_are_paths(fig):
    from restless.core import validate_witness
    g = fig[0]
    for p in brute_force(g, Query(0, 5, 3), enumerate_all=True).all_witnesses:
        assert validate_witness(g, Query(0, 5, 3), p)[0]
    assert path_from_vertices([0, 4, 2, 5], [2, 4, 6], 2).vertices == [0, 4, 2, 5]
