"""Restless paths parameterized by the feedback edge number of the underlying graph."""

from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (Query, RestlessPath, StaticGraph, TemporalGraph, direct_edge_witness,
                   low_degree_reduce, underlying_graph)


def arrival_step(prev: Optional[Sequence[int]], labels: Sequence[int], delta: int) -> list[int]:
    """Times in ``labels`` reachable from some ``t'`` in ``prev`` with ``0 <= t - t' <= delta``.

    ``prev=None`` marks the first hop, where waiting at the source is free.
    Both lists are sorted; this is a single two-cursor merge.
    """
    if prev is None:
        return list(labels)
    out = []
    i = j = 0
    while i < len(labels) and j < len(prev):
        t, tp = labels[i], prev[j]
        if tp > t:
            i += 1
        elif t - tp <= delta:
            out.append(t)
            i += 1
        else:
            j += 1
    return out


def arrival_table(vertices: Sequence[int], times: dict, delta: int) -> list[list[int]]:
    """Arrival sets after every hop along a vertex sequence (the arrival-time DP)."""
    table = []
    prev = None
    for a, b in zip(vertices, vertices[1:]):
        prev = arrival_step(prev, times.get((min(a, b), max(a, b)), ()), delta)
        table.append(prev)
        if not prev:
            break
    return table


def path_witness(vertices: Sequence[int], table: list[list[int]], delta: int) -> RestlessPath:
    """Walk the DP table backwards picking one feasible time per hop."""
    k = len(vertices) - 1
    ts = [0] * k
    ts[-1] = table[-1][0]
    for i in range(k - 2, -1, -1):
        cand = table[i]
        j = bisect_left(cand, ts[i + 1] - delta)
        ts[i] = cand[j]
    return RestlessPath(tuple((vertices[i], vertices[i + 1], ts[i]) for i in range(k)), delta)


def _path_order(g: TemporalGraph, s: int, z: int) -> list[int]:
    adj = underlying_graph(g).adjacency()
    used = [v for v in range(g.n) if adj[v]]
    if s not in used or z not in used:
        raise ValueError("underlying graph is not an (s, z)-path")
    order = [s]
    prev, cur = None, s
    while cur != z:
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            raise ValueError("underlying graph is not an (s, z)-path")
        prev, cur = cur, nxt[0]
        order.append(cur)
    if len(order) != len(used) or len(adj[s]) != 1 or len(adj[z]) != 1:
        raise ValueError("underlying graph is not an (s, z)-path")
    return order


def arrival_times_on_path(g: TemporalGraph, q: Query) -> list[int]:
    """Sorted arrival times at z when the underlying graph of ``g`` is an (s, z)-path."""
    q = q.normalized(g)
    order = _path_order(g, q.source, q.target)
    table = arrival_table(order, g.edge_times(), q.delta)
    return table[-1] if len(table) == len(order) - 1 else []


@dataclass
class FesDecomposition:
    feedback_edges: list[tuple[int, int]]
    connecting_paths: list[list[int]]
    special: set[int] = field(default_factory=set)


def fes_decompose(graph: StaticGraph, s: int, z: int) -> FesDecomposition:
    """Spanning-forest complement F and the maximal paths of G - F whose
    interior avoids V_F, the vertices of forest degree other than two, s and z."""
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = [set() for _ in range(graph.n)]
    feedback = []
    for u, v in graph.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            feedback.append((u, v))
        else:
            parent[ru] = rv
            forest[u].add(v)
            forest[v].add(u)
    special = {s, z}
    for u, v in feedback:
        special.update((u, v))
    special.update(v for v in range(graph.n) if len(forest[v]) != 2)
    paths = []
    done = set()
    for u in sorted(special):
        for w in sorted(forest[u]):
            if (u, w) in done:
                continue
            path = [u, w]
            while path[-1] not in special:
                a, b = path[-2], path[-1]
                path.append(next(x for x in forest[b] if x != a))
            done.add((path[-1], path[-2]))
            paths.append(path)
    return FesDecomposition(feedback, paths, special)


@dataclass
class FesResult:
    answer: bool
    witness: Optional[RestlessPath] = None
    num_feedback: int = 0
    num_paths: int = 0
    candidates: int = 0


def fes_solve(g: TemporalGraph, q: Query) -> FesResult:
    """Enumerate (s, z)-paths of the underlying graph as chains of feedback
    edges and connecting paths, checking each with the arrival-time DP.

    Every simple (s, z)-path of G↓ is a sequence of pieces (connecting paths
    and feedback edges) that meet only at special vertices, so a DFS over
    the pieces visits exactly the pairs (F', P') that form an (s, z)-path.
    The DP is carried along the DFS, and a branch whose arrival set becomes
    empty is cut. Caps on |F'| are raised one at a time so candidates with
    few feedback edges are tried first.
    """
    q = q.normalized(g)
    direct = direct_edge_witness(g, q)
    res = FesResult(False)
    if q.k >= 1 and direct is not None:
        res.answer, res.witness = True, direct
        return res
    g = low_degree_reduce(g, q)
    s, z, delta = q.source, q.target, q.delta
    dec = fes_decompose(underlying_graph(g), s, z)
    res.num_feedback, res.num_paths = len(dec.feedback_edges), len(dec.connecting_paths)
    times = g.edge_times()
    pieces = defaultdict(list)  # special vertex -> (piece vertex sequence, is feedback edge)
    for path in dec.connecting_paths:
        pieces[path[0]].append((path, False))
        pieces[path[-1]].append((path[::-1], False))
    for u, v in dec.feedback_edges:
        pieces[u].append(([u, v], True))
        pieces[v].append(([v, u], True))

    on_path = {s}
    route = [s]
    tables: list[list[int]] = []

    def dfs(v, arrivals, budget, used):
        for piece, is_fb in pieces.get(v, ()):
            if is_fb and used == budget:
                continue
            end = piece[-1]
            if end in on_path or len(route) - 1 + len(piece) - 1 > q.k:
                continue
            prev = arrivals
            added = []
            for a, b in zip(piece, piece[1:]):
                prev = arrival_step(prev, times[(min(a, b), max(a, b))], delta)
                if not prev:
                    break
                added.append(prev)
            if len(added) < len(piece) - 1:
                continue
            route.extend(piece[1:])
            tables.extend(added)
            if end == z:
                if used + is_fb == budget:
                    res.candidates += 1
                    return True
            else:
                on_path.add(end)
                if dfs(end, prev, budget, used + is_fb):
                    return True
                on_path.discard(end)
            del route[len(route) - len(piece) + 1:]
            del tables[len(tables) - len(added):]
        return False

    for budget in range(len(dec.feedback_edges) + 1):
        if dfs(s, None, budget, 0):
            res.answer = True
            res.witness = path_witness(route, tables, delta)
            return res
    return res
