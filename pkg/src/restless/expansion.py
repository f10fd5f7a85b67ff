"""The Δ-(s,z)-expansion digraph and the two polynomial special cases of Δ."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Optional

from .core import Query, RestlessPath, TemporalGraph

SOURCE, TARGET = 0, 1


@dataclass(frozen=True)
class ExpansionDigraph:
    """Node 0 is s, node 1 is z, every other node is an appearance ``v^t``.

    ``vertex[i]`` is the temporal-graph vertex of node ``i`` (its partition
    class) and ``time[i]`` its timestep (0 for s and z).
    """

    vertex: tuple[int, ...]
    time: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...]
    pred: tuple[tuple[int, ...], ...]

    @property
    def num_nodes(self) -> int:
        return len(self.vertex)

    @property
    def num_arcs(self) -> int:
        return sum(len(a) for a in self.succ)

    def arcs(self):
        for u, out in enumerate(self.succ):
            for v in out:
                yield u, v

    def node_index(self) -> dict[tuple[int, int], int]:
        return {(self.vertex[i], self.time[i]): i for i in range(2, self.num_nodes)}

    def classes(self) -> dict[int, list[int]]:
        out = defaultdict(list)
        for i, v in enumerate(self.vertex):
            out[v].append(i)
        return dict(out)

    def name(self, i: int, g: Optional[TemporalGraph] = None) -> str:
        lab = g.label(self.vertex[i]) if g is not None else str(self.vertex[i])
        return lab if i < 2 else f"{lab}^{self.time[i]}"

    def dump(self, g: Optional[TemporalGraph] = None) -> str:
        return "".join(f"{self.name(u, g)} -> {self.name(v, g)}\n" for u, v in self.arcs())


def build_expansion(g: TemporalGraph, q: Query) -> ExpansionDigraph:
    q = q.normalized(g)
    s, z, delta = q.source, q.target, q.delta
    vertex, time = [s, z], [0, 0]
    index: dict[tuple[int, int], int] = {}
    appearances = defaultdict(list)  # v -> ascending timesteps with a node v^t
    arcs: list[set[int]] = [set(), set()]
    layers = g.layers()

    def node(v, t):
        i = index.get((v, t))
        if i is None:
            i = index[(v, t)] = len(vertex)
            vertex.append(v)
            time.append(t)
            arcs.append(set())
            appearances[v].append(t)
        return i

    for t in range(1, g.lifetime + 1):
        layer = layers[t]
        for u, v in layer:
            if {u, v} == {s, z}:
                raise ValueError("expansion requires that no time edge joins s and z")
            for x in (u, v):
                if x != s and x != z:
                    node(x, t)
        for u, v in layer:
            for a, b in ((u, v), (v, u)):
                # arcs that enter b at time t
                if b == s or a == z:
                    continue
                if a == s:
                    arcs[SOURCE].add(index[(b, t)])
                    continue
                head = TARGET if b == z else index[(b, t)]
                times = appearances[a]
                for j in range(len(times) - 1, -1, -1):
                    if t - times[j] > delta:
                        break
                    arcs[index[(a, times[j])]].add(head)

    succ = tuple(tuple(sorted(a)) for a in arcs)
    pred = [[] for _ in vertex]
    for u, out in enumerate(succ):
        for v in out:
            pred[v].append(u)
    return ExpansionDigraph(tuple(vertex), tuple(time), succ, tuple(tuple(p) for p in pred))


def walk_reachable(d: ExpansionDigraph) -> bool:
    seen = {SOURCE}
    todo = deque([SOURCE])
    while todo:
        u = todo.popleft()
        if u == TARGET:
            return True
        for v in d.succ[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return False


def special_case_solve(g: TemporalGraph, q: Query) -> Optional[tuple[bool, Optional[RestlessPath]]]:
    """Answer directly when Δ = 0 or Δ ≥ ℓ; ``None`` otherwise.

    Δ = 0 asks for a static path inside a single layer. Δ ≥ ℓ removes the
    waiting bound, so a single earliest-arrival scan over the layers suffices.
    """
    delta = q.delta
    q = q.normalized(g)
    if 0 < delta < g.lifetime:
        return None
    s, z = q.source, q.target
    layers = g.layers()
    parent: dict[int, tuple[int, int]] = {}
    if delta == 0:
        for t in range(1, g.lifetime + 1):
            parent = {}
            if _layer_bfs(layers[t], t, {s}, parent) and z in parent:
                return True, _unwind(parent, s, z, q.delta)
        return False, None
    reached = {s}
    for t in range(1, g.lifetime + 1):
        _layer_bfs(layers[t], t, reached, parent)
        if z in reached:
            return True, _unwind(parent, s, z, q.delta)
    return False, None


def _layer_bfs(layer, t, reached: set, parent: dict) -> bool:
    """Grow ``reached`` along the edges of one layer, recording parents."""
    adj = defaultdict(list)
    for u, v in layer:
        adj[u].append(v)
        adj[v].append(u)
    todo = deque(v for v in sorted(reached) if v in adj)
    grew = False
    while todo:
        u = todo.popleft()
        for w in adj[u]:
            if w not in reached:
                reached.add(w)
                parent[w] = (u, t)
                todo.append(w)
                grew = True
    return grew


def _unwind(parent, s, z, delta) -> RestlessPath:
    hops = []
    v = z
    while v != s:
        u, t = parent[v]
        hops.append((u, v, t))
        v = u
    return RestlessPath(tuple(reversed(hops)), delta)
