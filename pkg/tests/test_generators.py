import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from restless.core import Query, TemporalGraph, serialize, underlying_graph
from restless.generators import (Exact34Formula, backbone_instance, chain_instance, MulticoloredCliqueInstance, clique_completion, cnf_satisfiable,
                                 exact34_corpus, mcc_to_rtp, or_compose, pair_index, random_instance,
                                 random_mcc, sat_gadget_graph, sat_to_rtp)
from restless.fes_solver import fes_decompose
from restless.oracle import brute_force

from .conftest import instances


def oracle(g, q):
    return brute_force(g, q, force=True).exists


def test_corpus_shape():
    corpus = exact34_corpus()
    assert len(corpus) == 330
    assert all(len(f.clauses) == 4 for f in corpus)


def test_sat_instance_size():
    g, q = sat_to_rtp(exact34_corpus()[0])
    assert (g.n, g.lifetime, q.delta) == (34, 3, 1)


def test_sat_single_timestamps():
    for f in exact34_corpus()[::17]:
        g, _ = sat_to_rtp(f)
        assert len(g.time_edges) == len(underlying_graph(g).edges)


@pytest.mark.parametrize("idx", [0, 57, 123, 329])
def test_sat_satisfiable_formulas(idx):
    f = exact34_corpus()[idx]
    assert f.satisfiable() and oracle(*sat_to_rtp(f))


def test_general_cnf_unsatisfiable():
    clauses = [tuple(s * v for s, v in zip(signs, (1, 2, 3))) for signs in itertools.product((1, -1), repeat=3)]
    assert not cnf_satisfiable(3, clauses)
    g, q = sat_gadget_graph(3, clauses)
    # each variable occurs eight times: two segments of eight plus its own vertex
    assert g.n == 3 * (2 * 8 + 1) + 8 + 3
    assert not oracle(g, q)


@pytest.mark.parametrize("clauses, nv", [([(1, 2), (-1,), (-2,)], 2), ([(1,), (-1, 2), (-2, 3)], 3),
                                         ([(1, -2), (2,), (-1, 3), (-3,)], 3)])
def test_general_cnf_matches_sat(clauses, nv):
    assert oracle(*sat_gadget_graph(nv, clauses)) == cnf_satisfiable(nv, clauses)


def test_formula_validation():
    with pytest.raises(ValueError):
        Exact34Formula(3, ((1, 2, 3),))
    with pytest.raises(ValueError):
        Exact34Formula(3, ((1, 1, 2),) * 4)
    with pytest.raises(ValueError):
        Exact34Formula(3, ((1, 2, 4),) * 4)


def test_clique_completion_preserves_answer():
    f = exact34_corpus()[5]
    g, q = sat_to_rtp(f)
    h, q2 = clique_completion(g, q)
    missing = set(itertools.combinations(range(h.n), 2)) - set(underlying_graph(h).edges)
    assert missing == {tuple(sorted((q.source, q.target)))}
    assert q2 == q and h.lifetime == g.lifetime + 2


@settings(max_examples=40)
@given(instances(max_n=6, max_lifetime=3))
def test_clique_completion_random(inst):
    g, q = inst
    assert oracle(*clique_completion(g, q)) == oracle(g, q)


def test_pair_order():
    order = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    assert [pair_index(i, j) for i, j in order] == list(range(6))


def test_mcc_small():
    h = random_mcc(3, 2, 0.5, 1)
    assert oracle(*mcc_to_rtp(h)) == h.has_clique()


def test_mcc_planted_triangle():
    h = MulticoloredCliqueInstance((2, 2, 2), ((0, 1, 1, 0), (0, 1, 2, 1), (1, 0, 2, 1), (0, 0, 1, 1)))
    assert h.has_clique() and oracle(*mcc_to_rtp(h))


def test_mcc_last_vertex_of_last_part():
    # the clique uses the last vertex of the last part
    h = MulticoloredCliqueInstance((2, 2, 2), ((0, 1, 1, 1), (0, 1, 2, 1), (1, 1, 2, 1)))
    assert h.has_clique() and oracle(*mcc_to_rtp(h))


def test_mcc_empty_pair_padded():
    h = MulticoloredCliqueInstance((2, 2, 2), ((0, 0, 2, 0), (1, 0, 2, 0)))
    p = h.padded()
    assert len({len(p.between(i, j)) for i, j in itertools.combinations(range(3), 2)}) == 1
    assert len(set(p.parts)) == 1
    assert not p.has_clique() and not oracle(*mcc_to_rtp(h))


def test_mcc_padding_keeps_cliques():
    for seed in range(20):
        h = random_mcc(3, 2, 0.5, seed)
        assert h.padded().has_clique() == h.has_clique()


@pytest.mark.parametrize("seed", range(12))
def test_mcc_matches_clique_search(seed):
    h = random_mcc(3, 1 + seed % 3, 0.6, seed)
    assert oracle(*mcc_to_rtp(h)) == h.has_clique()


def _path_instance(yes):
    edges = ((0, 1, 1), (1, 2, 2)) if yes else ((0, 1, 2), (1, 2, 1))
    return TemporalGraph(3, 2, edges), Query(0, 2, 1)


def test_or_yes_no():
    assert oracle(*or_compose([_path_instance(True), _path_instance(False)]))
    assert oracle(*or_compose([_path_instance(False), _path_instance(True)]))
    assert not oracle(*or_compose([_path_instance(False), _path_instance(False)]))


def test_or_single_is_copy():
    g, q = _path_instance(True)
    assert or_compose([(g, q)]) == (g, q)


def test_or_rejects_mismatch():
    g, q = _path_instance(True)
    with pytest.raises(ValueError):
        or_compose([(g, q), (g, Query(0, 2, 2))])
    with pytest.raises(ValueError):
        or_compose([(g, q), (TemporalGraph(4, 1), q)])
    with pytest.raises(ValueError):
        or_compose([])


@settings(max_examples=40)
@given(st.lists(instances(max_n=5, max_lifetime=3), min_size=1, max_size=3))
def test_or_is_or(batch):
    n = batch[0][0].n
    delta = batch[0][1].delta
    batch = [(g, Query(q.source, q.target, delta)) for g, q in batch if g.n == n]
    assert oracle(*or_compose(batch)) == any(oracle(g, q) for g, q in batch)


def test_random_instance_extremes():
    assert random_instance(4, 3, 0.0, 1).time_edges == ()
    assert len(random_instance(3, 2, 1.0, 1).time_edges) == 6


def test_random_instance_deterministic():
    assert serialize(random_instance(6, 4, 0.3, 42)) == serialize(random_instance(6, 4, 0.3, 42))
    assert serialize(random_instance(6, 4, 0.3, 42)) != serialize(random_instance(6, 4, 0.3, 43))


@pytest.mark.parametrize("seed", range(5))
def test_backbone_instance(seed):
    g = backbone_instance(12, 3, 3, seed)
    assert len(fes_decompose(underlying_graph(g), 0, 11).feedback_edges) == 3
    assert len(g.time_edges) == 3 * (11 + 3)
    assert oracle(g, Query(0, 11, 1))


@pytest.mark.parametrize("seed", range(5))
def test_chain_instance(seed):
    g = chain_instance(18, 20, 40, 10, seed)
    assert not oracle(g, Query(0, 1, 20, 9))
    assert oracle(g, Query(0, 1, 2, 10))


def test_scaling_generator_arguments():
    with pytest.raises(ValueError):
        backbone_instance(3, 0, 1, 0)
    with pytest.raises(ValueError):
        backbone_instance(4, 10, 1, 0)
    with pytest.raises(ValueError):
        chain_instance(10, 50, 5, 10, 0)
