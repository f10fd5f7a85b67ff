"""Hardness constructions checked against brute force, plus the
answer-preserving transforms."""

import random

from restless import Query, brute_force, low_degree_reduce, pad_delta
from restless.generators import (cnf_satisfiable, exact34_corpus, mcc_to_rtp, random_instance, random_mcc,
                                 sat_gadget_graph, sat_to_rtp)

# SAT: every three-variable Exact(3,4) formula is satisfiable
corpus = exact34_corpus(3)
agree = sum(brute_force(*sat_to_rtp(f), force=True).exists == f.satisfiable() for f in corpus)
print(f"Exact(3,4): {agree}/{len(corpus)} formulas agree")

# a general CNF gives an unsatisfiable instance too
clauses = [(1, 2), (-1, 2), (1, -2), (-1, -2)]
g, q = sat_gadget_graph(2, clauses)
print(f"unsat CNF: {g.n} vertices, oracle {brute_force(g, q, force=True).exists}, "
      f"sat {cnf_satisfiable(2, clauses)}")

# multicolored clique
rows = []
for seed in range(12):
    h = random_mcc(3, 2, 0.5, seed)
    g, q = mcc_to_rtp(h)
    rows.append((seed, g.n, g.lifetime, h.has_clique(), brute_force(g, q, force=True).exists))
print("\nseed  n  lifetime  clique  oracle")
for seed, n, life, want, got in rows:
    print(f"{seed:4} {n:3} {life:9}  {str(want):6}  {got}")

# transforms on random instances
rng = random.Random(0)
same = total = 0
for _ in range(300):
    n = rng.randint(3, 7)
    g = random_instance(n, 5, 0.3, rng.randrange(10**6))
    s, z = rng.sample(range(n), 2)
    delta = rng.randint(1, 4)
    q = Query(s, z, delta)
    want = brute_force(g, q).exists
    same += brute_force(pad_delta(g, delta), Query(s, z, delta + 1)).exists == want
    same += brute_force(low_degree_reduce(g, q), q).exists == want
    total += 2
print(f"\ntransforms: {same}/{total} answers preserved")
