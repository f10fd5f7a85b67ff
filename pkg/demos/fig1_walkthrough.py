"""Walk through the six-vertex running example with every solver."""

from restless import (Query, brute_force, build_expansion, compute_tfvs, fes_decompose, fes_solve, fig1,
                      format_witness, parse_witness, solve_short, tfvs_solve, underlying_graph,
                      validate_witness, walk_reachable)

g, ids = fig1()
name = g.label
s, b, d, z = ids["s"], ids["b"], ids["d"], ids["z"]
q = Query(s, z, 2)

print("time edges:")
for u, v, t in g.time_edges:
    print(f"  {name(u)}-{name(v)} at {t}")

# oracle: every 2-restless (s, z)-path
res = brute_force(g, q, enumerate_all=True)
print("\noracle:", res.exists, "shortest length", res.shortest_length)
for p in res.all_witnesses:
    print("  ", " -> ".join(f"{name(v)}" for v in p.vertices), p.times())

# the walk relaxation on the expansion digraph
exp = build_expansion(g, q)
print(f"\nexpansion: {exp.num_nodes} nodes, {exp.num_arcs} arcs, walk reachable: {walk_reachable(exp)}")
print(exp.dump(g), end="")

# short paths via representative families
for k in (2, 3, 5):
    r = solve_short(g, Query(s, z, 2, k))
    print(f"\nrepset k={k}: {r.answer}, largest family {r.max_family}")

# feedback edges of the underlying graph
dec = fes_decompose(underlying_graph(g), s, z)
print("\nfeedback edges:", [(name(u), name(v)) for u, v in dec.feedback_edges])
print("fes:", fes_solve(g, q).answer)

# timed feedback vertex set
xs = compute_tfvs(g)
print("\ntimed feedback vertex set:", sorted((name(v), t) for v, t in xs))
print("tfvs:", tfvs_solve(g, q, xs).answer)

# witness checking
good = parse_witness(f"{s} {d} 2\n{d} {b} 4\n{b} {z} 6\n", 2)
bad = parse_witness(f"{s} {b} 1\n{b} {z} 6\n", 2)
print("\n" + format_witness(good), validate_witness(g, q, good))
print(format_witness(bad), validate_witness(g, q, bad))
