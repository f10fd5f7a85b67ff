import itertools
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from restless.field_matroid import (build_truncated_partition_matroid, det_mod_p, is_prime, rank_mod_p,
                                    representative_family, smallest_prime_at_least)


def partition_independent(parts, k, xs):
    """Set-theoretic definition: at most k+1 elements, at most one per part."""
    where = {x: i for i, part in enumerate(parts) for x in part}
    return len(xs) <= k + 1 and len({where[x] for x in xs}) == len(xs)


def test_smallest_prime_examples():
    assert smallest_prime_at_least(1) == 2
    assert smallest_prime_at_least(2) == 2
    assert smallest_prime_at_least(6) == 7
    p = smallest_prime_at_least(10**4)
    assert p == 10007 and 10**4 <= p <= 2 * 10**4


def test_smallest_prime_against_sieve():
    n = 3000
    sieve = [True] * (2 * n + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, 2 * n + 1):
        if sieve[i]:
            for j in range(i * i, 2 * n + 1, i):
                sieve[j] = False
    for q in range(1, n):
        p = smallest_prime_at_least(q)
        assert sieve[p] and all(not sieve[x] for x in range(max(q, 2), p)) and p <= 2 * max(q, 2)
    assert [x for x in range(50) if is_prime(x)] == [x for x in range(50) if sieve[x]]


def test_rank_and_det_mod_p():
    a = np.array([[1, 2], [3, 4]])
    assert det_mod_p(a, 7) == (1 * 4 - 2 * 3) % 7
    assert rank_mod_p(np.array([[1, 2], [2, 4]]), 7) == 1
    assert rank_mod_p(np.array([[1, 2], [2, 4]]), 3) == 1
    assert rank_mod_p(np.array([[1, 1], [1, 2]]), 2) == 2
    assert rank_mod_p(np.zeros((0, 3), dtype=np.int64), 5) == 0


@given(st.integers(2, 6), st.integers(2, 6), st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 10**6))
def test_rank_is_column_order_stable(rows, cols, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(rows, cols))
    perm = rng.permutation(cols)
    assert rank_mod_p(a, p) == rank_mod_p(a[:, perm], p) == rank_mod_p(a.T, p)


def test_two_part_example():
    rep = build_truncated_partition_matroid([["a1", "a2"], ["b1"]], 1)
    assert rep.matrix.shape == (2, 3)
    assert (rep.columns(["a1"]) == rep.columns(["a2"])).all()
    assert not rep.is_independent(["a1", "a2"])
    assert rep.is_independent(["a1", "b1"])


def test_single_part_example():
    rep = build_truncated_partition_matroid([["u"]], 0)
    assert rep.matrix.tolist() == [[1]]
    assert rep.is_independent([]) and rep.is_independent(["u"])


def test_rank_bound():
    parts = [[i] for i in range(5)]
    rep = build_truncated_partition_matroid(parts, 2)
    assert rep.is_independent([0, 1, 2])
    assert all(not rep.is_independent(c) for c in itertools.combinations(range(5), 4))


def test_bad_parts():
    with pytest.raises(ValueError):
        build_truncated_partition_matroid([], 1)
    with pytest.raises(ValueError):
        build_truncated_partition_matroid([[1], [1]], 1)


def _random_partition(rng, size):
    labels = list(range(size))
    rng.shuffle(labels)
    cuts = sorted(rng.sample(range(1, size), rng.randint(0, size - 1))) if size > 1 else []
    bounds = [0] + cuts + [size]
    return [labels[a:b] for a, b in zip(bounds, bounds[1:])]


@pytest.mark.parametrize("seed", range(8))
def test_representation_matches_definition(seed):
    rng = random.Random(seed)
    size = rng.randint(1, 9)
    parts = _random_partition(rng, size)
    k = rng.randint(0, len(parts))
    rep = build_truncated_partition_matroid(parts, k)
    for r in range(size + 1):
        for xs in itertools.combinations(range(size), r):
            assert rep.is_independent(xs) == partition_independent(parts, k, xs)


def is_representative(family, rep_family, parts, k, q, universe):
    for size in range(q + 1):
        for ys in itertools.combinations(universe, size):
            ys = set(ys)
            fits = lambda x: not (set(x) & ys) and partition_independent(parts, k, set(x) | ys)
            if any(fits(x) for x in family) and not any(fits(x) for x in rep_family):
                return False
    return True


def test_representative_of_empty_set():
    rep = build_truncated_partition_matroid([["a"], ["b"]], 1)
    assert representative_family([()], rep) == [()]
    assert representative_family([], rep) == []


def test_representative_singletons():
    parts = [["a"], ["b"], ["c"]]
    rep = build_truncated_partition_matroid(parts, 1)
    fam = [("a",), ("b",), ("c",)]
    out = representative_family(fam, rep)
    assert len(out) <= 2 and set(out) <= set(fam)
    assert is_representative(fam, out, parts, 1, 1, ["a", "b", "c"])


def test_representative_identical_spans():
    parts = [["a1", "a2"], ["b"]]
    rep = build_truncated_partition_matroid(parts, 1)
    out = representative_family([("a1",), ("a2",)], rep)
    assert len(out) == 1


def test_representative_rejects_dependent_members():
    rep = build_truncated_partition_matroid([["a1", "a2"], ["b"]], 1)
    with pytest.raises(ValueError):
        representative_family([("a1", "a2")], rep)
    with pytest.raises(ValueError):
        representative_family([("a1",), ("a1", "b")], rep)


@pytest.mark.parametrize("seed", range(25))
def test_representative_family_property(seed):
    rng = random.Random(1000 + seed)
    size = rng.randint(2, 8)
    parts = _random_partition(rng, size)
    r = rng.randint(1, min(6, len(parts)))
    k = r - 1
    p = rng.randint(0, r)
    q = r - p
    rep = build_truncated_partition_matroid(parts, k)
    candidates = [c for c in itertools.combinations(range(size), p) if partition_independent(parts, k, c)]
    if not candidates:
        return
    family = rng.sample(candidates, rng.randint(1, len(candidates)))
    out = representative_family(family, rep)
    assert set(out) <= {tuple(sorted(x)) for x in family}
    assert len(out) <= comb(r, p)
    assert is_representative(family, out, parts, k, q, range(size))
