"""Instance generators: the two hardness constructions, OR-composition,
seeded random temporal graphs and large scaling workloads."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .core import Query, TemporalGraph

Literal = int  # +v or -v for variable v >= 1
Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class Exact34Formula:
    """CNF with exactly three literals per clause and four occurrences per variable."""

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        _check_cnf(self.num_vars, self.clauses)
        if any(len(c) != 3 for c in self.clauses):
            raise ValueError("every clause needs exactly three literals")
        occ = Counter(abs(x) for c in self.clauses for x in c)
        if any(occ[v] != 4 for v in range(1, self.num_vars + 1)):
            raise ValueError("every variable must occur exactly four times")

    def satisfiable(self) -> bool:
        return cnf_satisfiable(self.num_vars, self.clauses)


def _check_cnf(num_vars: int, clauses: Sequence[Clause]) -> None:
    for c in clauses:
        if any(x == 0 or abs(x) > num_vars for x in c):
            raise ValueError(f"literal out of range in clause {c}")
        if len({abs(x) for x in c}) != len(c):
            raise ValueError(f"clause {c} repeats a variable")


def cnf_satisfiable(num_vars: int, clauses: Sequence[Clause]) -> bool:
    for bits in itertools.product((False, True), repeat=num_vars):
        if all(any(bits[abs(x) - 1] == (x > 0) for x in c) for c in clauses):
            return True
    return False


def exact34_corpus(num_vars: int = 3) -> list[Exact34Formula]:
    """Every Exact(3,4) formula on three variables, up to clause order.

    With three variables each clause holds all of them, so a formula is a
    multiset of four sign patterns.
    """
    if num_vars != 3:
        raise ValueError("the enumerated corpus covers three variables only")
    patterns = [tuple(v if sign else -v for v, sign in zip((1, 2, 3), signs))
                for signs in itertools.product((True, False), repeat=3)]
    return [Exact34Formula(3, combo) for combo in itertools.combinations_with_replacement(patterns, 4)]


def sat_gadget_graph(num_vars: int, clauses: Sequence[Clause]) -> tuple[TemporalGraph, Query]:
    """The layered SAT construction for any CNF without repeated variables
    per clause. Variable segments get one vertex per occurrence; with the
    Exact(3,4) shape this is the four-vertex segment."""
    _check_cnf(num_vars, clauses)
    occ = Counter(abs(x) for c in clauses for x in c)
    names: list[str] = []

    def vertex(name):
        names.append(name)
        return len(names) - 1

    s = vertex("s")
    pos, neg, hub = {}, {}, {}
    for i in range(1, num_vars + 1):
        length = max(occ[i], 1)
        pos[i] = [vertex(f"x{i}^{r}") for r in range(1, length + 1)]
        neg[i] = [vertex(f"~x{i}^{r}") for r in range(1, length + 1)]
        hub[i] = vertex(f"s{i}")
    s_prime = vertex("s'")
    cvert = [vertex(f"c{j}") for j in range(1, len(clauses) + 1)]
    z = vertex("z")
    edges = []
    prev = s
    for i in range(1, num_vars + 1):
        for seg in (pos[i], neg[i]):
            edges.append((prev, seg[0], 1))
            edges += [(a, b, 1) for a, b in zip(seg, seg[1:])]
            edges.append((seg[-1], hub[i], 1))
        prev = hub[i]
    edges.append((prev, s_prime, 2))
    edges.append((s_prime, cvert[0] if cvert else z, 3))
    seen = Counter()
    for j, clause in enumerate(clauses):
        nxt = cvert[j + 1] if j + 1 < len(clauses) else z
        for x in clause:
            v = abs(x)
            seen[v] += 1
            lit = (pos if x > 0 else neg)[v][seen[v] - 1]
            edges += [(cvert[j], lit, 3), (lit, nxt, 3)]
    g = TemporalGraph(len(names), 3, tuple(edges), tuple(names))
    return g, Query(s, z, 1)


def sat_to_rtp(f: Exact34Formula) -> tuple[TemporalGraph, Query]:
    """Δ = 1, ℓ = 3 instance with 9n + m + 3 vertices that has a restless
    (s, z)-path iff ``f`` is satisfiable."""
    if not isinstance(f, Exact34Formula):
        raise TypeError("expected an Exact34Formula")
    return sat_gadget_graph(f.num_vars, f.clauses)


def clique_completion(g: TemporalGraph, q: Query) -> tuple[TemporalGraph, Query]:
    """Prepend a complete layer on V - {s} and append one on V - {z}.

    Neither layer can be used by an (s, z)-path, so the answer is unchanged
    while the underlying graph misses only the edge {s, z}.
    """
    s, z = q.source, q.target
    edges = [(u, v, t + 1) for u, v, t in g.time_edges]
    last = g.lifetime + 2
    for u, v in itertools.combinations(range(g.n), 2):
        if s not in (u, v):
            edges.append((u, v, 1))
        if z not in (u, v):
            edges.append((u, v, last))
    return TemporalGraph(g.n, last, tuple(edges), g.labels), q


@dataclass(frozen=True)
class MulticoloredCliqueInstance:
    """``parts[i]`` vertices in part i; edges ``(i, a, j, b)`` join vertex a of
    part i to vertex b of part j, with i < j (all 0-based)."""

    parts: tuple[int, ...]
    edges: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        norm = set()
        for i, a, j, b in self.edges:
            if i == j:
                raise ValueError("edges must join different parts")
            if i > j:
                i, a, j, b = j, b, i, a
            if not (0 <= i < len(self.parts) and 0 <= j < len(self.parts)):
                raise ValueError("part index out of range")
            if not (0 <= a < self.parts[i] and 0 <= b < self.parts[j]):
                raise ValueError("vertex index out of range")
            norm.add((i, a, j, b))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def k(self) -> int:
        return len(self.parts)

    def between(self, i: int, j: int) -> list[tuple[int, int]]:
        return [(a, b) for ii, a, jj, b in self.edges if (ii, jj) == (i, j)]

    def has_clique(self) -> bool:
        edges = set(self.edges)
        for pick in itertools.product(*(range(p) for p in self.parts)):
            if all((i, pick[i], j, pick[j]) in edges for i, j in itertools.combinations(range(self.k), 2)):
                return True
        return False

    def padded(self) -> "MulticoloredCliqueInstance":
        """Equalize every |F_ij| with fresh pendant edge pairs, then every part
        size with isolated vertices. No clique of size k >= 3 is created."""
        k = self.k
        m = max([1] + [len(self.between(i, j)) for i, j in itertools.combinations(range(k), 2)])
        sizes = list(self.parts)
        edges = list(self.edges)
        for i, j in itertools.combinations(range(k), 2):
            for _ in range(m - len(self.between(i, j))):
                edges.append((i, sizes[i], j, sizes[j]))
                sizes[i] += 1
                sizes[j] += 1
        n = max(sizes)
        return MulticoloredCliqueInstance(tuple([n] * k), tuple(edges))


def random_mcc(k: int, part_size: int, edge_prob: float, seed: int) -> MulticoloredCliqueInstance:
    rng = random.Random(seed)
    edges = []
    for i, j in itertools.combinations(range(k), 2):
        for a in range(part_size):
            for b in range(part_size):
                if rng.random() < edge_prob:
                    edges.append((i, a, j, b))
    return MulticoloredCliqueInstance(tuple([part_size] * k), tuple(edges))


def pair_index(i: int, j: int) -> int:
    """Position of the pair i < j (1-based) in the order (1,2), (1,3), (2,3), (1,4), ..."""
    return comb(j - 1, 2) + (i - 1)


def mcc_to_rtp(h: MulticoloredCliqueInstance) -> tuple[TemporalGraph, Query]:
    """Δ = 1 instance that has a restless (s, z)-path iff ``h`` has a
    multicolored clique.

    Part i (1-based) gets a selection gadget whose segment for vertex a
    has k vertices; segment vertex x of vertex a is the one the validation
    gadget for the pair {i, x} may visit. Validation gadgets follow in
    :func:`pair_index` order, each occupying 2m timesteps.
    """
    if h.k < 3:
        raise ValueError("need k >= 3")
    h = h.padded()
    k, n = h.k, h.parts[0]
    m = len(h.between(0, 1))
    names: list[str] = []
    edges: list[tuple[int, int, int]] = []

    def vertex(name):
        names.append(name)
        return len(names) - 1

    s = vertex("s")
    seg = {}  # (i, a, x) -> vertex, all 1-based
    w = {}
    skip = {}
    for i in range(1, k + 1):
        skip[i] = vertex(f"s^({i})")
        w[(i, 1)] = vertex(f"w1^({i})")
        for a in range(1, n + 1):
            for x in range(1, k + 1):
                seg[(i, a, x)] = vertex(f"v{a},{x}^({i})")
            w[(i, a + 1)] = vertex(f"w{a + 1}^({i})")
        for a in range(1, n + 1):
            t = (i - 1) * n + a
            chain = [w[(i, a)]] + [seg[(i, a, x)] for x in range(1, k + 1)] + [w[(i, a + 1)]]
            edges += [(p, q, t) for p, q in zip(chain, chain[1:])]
        for a in range(1, n + 2):
            edges.append((skip[i], w[(i, a)], (i - 1) * n + a))
        if i > 1:
            edges.append((w[(i - 1, n + 1)], w[(i, 1)], (i - 1) * n + 1))
    edges += [(s, w[(1, 1)], 1), (s, skip[1], 1)]

    base = k * n + 1
    prev_end, prev_time = w[(k, n + 1)], base
    for j in range(2, k + 1):
        for i in range(1, j):
            y = base + 2 * m * pair_index(i, j)
            tag = f"({i},{j})"
            v = {(hh, r): vertex(f"v{hh},{r}^{tag}") for hh in range(1, m + 1) for r in range(1, 5)}
            s1, s2, s3 = (vertex(f"s{r}^{tag}") for r in (1, 2, 3))
            edges.append((prev_end, v[(1, 1)], y))
            for hh, (a, b) in enumerate(h.between(i - 1, j - 1), start=1):
                t = y + 2 * hh - 1
                edges += [(v[(hh, 1)], v[(hh, 2)], t), (v[(hh, 1)], s1, t),
                          (v[(hh, 3)], v[(hh, 4)], t), (v[(hh, 3)], s3, t)]
                if hh < m:
                    edges += [(v[(hh, 2)], v[(hh + 1, 1)], t + 1), (v[(hh, 4)], v[(hh + 1, 3)], t + 1)]
                left, right = seg[(i, a + 1, j)], seg[(j, b + 1, i)]
                edges += [(s1, left, t), (s2, left, t), (s2, right, t), (s3, right, t)]
            prev_end, prev_time = v[(m, 4)], y + 2 * m
    z = vertex("z")
    edges.append((prev_end, z, prev_time))
    g = TemporalGraph(len(names), prev_time, tuple(edges), tuple(names))
    return g, Query(s, z, 1)


def or_compose(instances: Sequence[tuple[TemporalGraph, Query]]) -> tuple[TemporalGraph, Query]:
    """Concatenate instances in time, Δ + 1 empty layers apart, after
    renaming each so its terminals coincide with the first instance's."""
    if not instances:
        raise ValueError("need at least one instance")
    g0, q0 = instances[0]
    n, delta = g0.n, q0.delta
    edges = []
    offset = 0
    for g, q in instances:
        if g.n != n or q.delta != delta:
            raise ValueError("instances must share the vertex count and delta")
        perm = _terminal_permutation(n, (q.source, q.target), (q0.source, q0.target))
        edges += [(perm[u], perm[v], t + offset) for u, v, t in g.time_edges]
        offset += g.lifetime + delta + 1
    lifetime = offset - delta - 1
    return TemporalGraph(n, lifetime, tuple(edges), g0.labels), Query(q0.source, q0.target, delta)


def _terminal_permutation(n: int, old: tuple[int, int], new: tuple[int, int]) -> list[int]:
    perm = [-1] * n
    for a, b in zip(old, new):
        perm[a] = b
    free = iter(v for v in range(n) if v not in new)
    for v in range(n):
        if perm[v] < 0:
            perm[v] = next(free)
    return perm


def random_instance(n: int, lifetime: int, density: float, seed: int) -> TemporalGraph:
    """Each (pair, timestep) is present independently with probability ``density``."""
    if n < 0 or lifetime < 1 or not 0 <= density <= 1:
        raise ValueError("need n >= 0, lifetime >= 1 and density in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v, t) for t in range(1, lifetime + 1)
             for u, v in itertools.combinations(range(n), 2) if rng.random() < density]
    return TemporalGraph(n, lifetime, tuple(edges))


def backbone_instance(n: int, chords: int, per_edge: int, seed: int) -> TemporalGraph:
    """Path 0..n-1 whose edge (i, i+1) is active at i+1..i+per_edge, plus
    ``chords`` extra edges with ``per_edge`` random timestamps each. The underlying graph has
    feedback edge number ``chords``; 0 reaches n-1 for every Δ >= 1, while n-1
    reaching 0 needs the chords."""
    if n < 4 or chords < 0 or per_edge < 1:
        raise ValueError("need n >= 4, chords >= 0 and per_edge >= 1")
    if chords > comb(n, 2) - (n - 1):
        raise ValueError("too many chords for n vertices")
    rng = random.Random(seed)
    lifetime = n + per_edge
    edges = [(i, i + 1, i + 1 + j) for i in range(n - 1) for j in range(per_edge)]
    extra = set()
    while len(extra) < chords:
        u, v = sorted(rng.sample(range(n), 2))
        if v - u > 1:
            extra.add((u, v))
    edges += [(u, v, t) for u, v in sorted(extra) for t in rng.sample(range(1, lifetime + 1), per_edge)]
    return TemporalGraph(n, lifetime, tuple(edges))


def chain_instance(n: int, lifetime: int, noise: int, chain: int, seed: int) -> TemporalGraph:
    """s = 0 reaches z = 1 only through a private chain of ``chain`` edges;
    the other vertices carry ``noise`` random time edges and 50 of them
    touch s. Queries with k < chain answer no after exploring the noise."""
    if chain < 2 or n < chain + 3 or lifetime < 2 * chain:
        raise ValueError("need chain >= 2, n >= chain + 3 and lifetime >= 2 * chain")
    rng = random.Random(seed)
    path = [0] + list(range(2, chain + 1)) + [1]
    edges = [(a, b, 2 * (i + 1)) for i, (a, b) in enumerate(zip(path, path[1:]))]
    hub = range(chain + 1, n)
    for _ in range(noise):
        u, v = rng.sample(hub, 2)
        edges.append((u, v, rng.randint(1, lifetime)))
    for v in rng.sample(hub, min(50, len(hub))):
        edges.append((0, v, rng.randint(1, lifetime)))
    return TemporalGraph(n, lifetime, tuple(edges))
