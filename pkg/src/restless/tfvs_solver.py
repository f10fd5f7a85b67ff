"""Restless paths parameterized by a timed feedback vertex set X.

A path meets X in a few appearances: ``I`` where it arrives, ``O`` where it
leaves, and the rest ``U`` it never touches. Guessing the split and the
order in which the path visits them leaves gaps, and each gap is a path in
the forest that remains once the guessed vertices are gone. Those forest
paths must be pairwise disjoint, which is a multicolored independent set
question on their vertex sets.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import Query, RestlessPath, TemporalGraph, direct_edge_witness, is_forest, underlying_graph
from .fes_solver import arrival_table, path_witness
from .tfvs import Appearance, is_tfvs

BOTTOM = None  # the timestamp of the (s, ⊥) and (z, ⊥) sentinels


@dataclass(frozen=True)
class ValidPartition:
    out: frozenset
    inn: frozenset
    unused: frozenset


@dataclass(frozen=True)
class OrderItem:
    vertex: int
    time: Optional[int]
    kind: str  # "s", "z", "I" or "O"


DeltaOrdering = tuple[OrderItem, ...]


@dataclass(frozen=True)
class Segment:
    interior: frozenset
    transitions: tuple


SegmentFamily = list[dict[frozenset, Segment]]


def enumerate_valid_partitions(xs) -> Iterator[ValidPartition]:
    """All splits of X into O, I, U where neither O nor I holds two
    appearances of one vertex."""
    xs = sorted(xs)
    for labels in itertools.product("OIU", repeat=len(xs)):
        parts = {"O": [], "I": [], "U": []}
        for app, lab in zip(xs, labels):
            parts[lab].append(app)
        if any(len({v for v, _ in parts[k]}) != len(parts[k]) for k in "OI"):
            continue
        yield ValidPartition(frozenset(parts["O"]), frozenset(parts["I"]), frozenset(parts["U"]))


def enumerate_delta_orderings(p: ValidPartition, s: int, z: int, delta: int) -> Iterator[DeltaOrdering]:
    """Orderings of I ∪ O between (s, ⊥) and (z, ⊥) with non-decreasing
    timestamps, where an I- and an O-appearance of the same vertex sit next
    to each other, I first, at most Δ apart."""
    items = [OrderItem(v, t, "I") for v, t in p.inn] + [OrderItem(v, t, "O") for v, t in p.out]
    items.sort(key=lambda it: (it.time, it.vertex, it.kind))
    partner = {}
    for a in items:
        for b in items:
            if a.kind == "I" and b.kind == "O" and a.vertex == b.vertex:
                if not a.time <= b.time <= a.time + delta:
                    return
                partner[a] = b
    paired_out = set(partner.values())
    head, tail = OrderItem(s, BOTTOM, "s"), OrderItem(z, BOTTOM, "z")
    seq: list[OrderItem] = []
    used: set[OrderItem] = set()

    def extend():
        if len(seq) == len(items):
            yield (head, *seq, tail)
            return
        last = seq[-1] if seq else None
        if last is not None and last in partner:
            options = [partner[last]]
        else:
            options = [it for it in items if it not in used and it not in paired_out]
        floor = last.time if last is not None else -1
        for it in options:
            if it.time < floor:
                continue
            seq.append(it)
            used.add(it)
            yield from extend()
            used.discard(it)
            seq.pop()

    yield from extend()


class _Forest:
    """The temporal graph T left after removing U and the guessed vertices."""

    def __init__(self, g: TemporalGraph, p: ValidPartition, s: int, z: int):
        gone = {v for v, _ in p.inn | p.out} | {s, z}
        self.edges = [(u, w, t) for u, w, t in g.time_edges
                      if (u, t) not in p.unused and (w, t) not in p.unused]
        self.times = defaultdict(list)
        adj = defaultdict(set)
        for u, w, t in self.edges:
            if u not in gone and w not in gone:
                self.times[(u, w)].append(t)
                adj[u].add(w)
                adj[w].add(u)
        if not is_forest(g.n, self.times):
            raise ValueError("X does not leave a forest")
        self.gone = gone
        self.parent, self.depth = {}, {}
        for r in sorted(adj):
            if r in self.depth:
                continue
            self.parent[r], self.depth[r] = None, 0
            todo = deque([r])
            while todo:
                u = todo.popleft()
                for w in adj[u]:
                    if w not in self.depth:
                        self.parent[w], self.depth[w] = u, self.depth[u] + 1
                        todo.append(w)
        self.incident = defaultdict(list)  # vertex -> time edges of G - U at it
        for u, w, t in self.edges:
            self.incident[u].append((w, t))
            self.incident[w].append((u, t))

    def path(self, a: int, b: int) -> Optional[list[int]]:
        """The unique forest path between two vertices of T."""
        if a == b:
            return [a] if a not in self.gone else None
        if a not in self.depth or b not in self.depth:
            return None
        left, right = [a], [b]
        while left[-1] != right[-1]:
            x, y = left[-1], right[-1]
            if self.depth[x] >= self.depth[y]:
                nxt = self.parent[x]
                if nxt is None:
                    return None
                left.append(nxt)
            else:
                nxt = self.parent[y]
                if nxt is None:
                    return None
                right.append(nxt)
        return left + right[-2::-1]


def _departure_ok(item: OrderItem, t: int, delta: int) -> bool:
    if item.kind == "I":
        return item.time <= t <= item.time + delta
    if item.kind == "O":
        return t == item.time
    return True


def _arrival_ok(item: OrderItem, t: int, delta: int) -> bool:
    if item.kind == "I":
        return t == item.time
    if item.kind == "O":
        return t <= item.time <= t + delta
    return True


def gap_family(forest: _Forest, a: OrderItem, b: OrderItem, delta: int) -> dict[frozenset, Segment]:
    """Interior vertex sets of the valid segments from ``a`` to ``b``.

    Every pair of a time edge e1 leaving a.vertex and a time edge e2 entering
    b.vertex fixes the segment's route, so one DP along it decides whether a
    segment with those end edges exists. e1 = e2 is the one-hop segment.
    """
    if a.vertex == b.vertex:
        return {frozenset(): Segment(frozenset(), ())}
    fam: dict[frozenset, Segment] = {}
    for w, t1 in forest.incident[a.vertex]:
        if not _departure_ok(a, t1, delta):
            continue
        if w == b.vertex:
            if _arrival_ok(b, t1, delta):
                fam.setdefault(frozenset(), Segment(frozenset(), ((a.vertex, w, t1),)))
            continue
        if w in forest.gone:
            continue
        for u, t2 in forest.incident[b.vertex]:
            if u in forest.gone or not _arrival_ok(b, t2, delta):
                continue
            mid = forest.path(w, u)
            if mid is None:
                continue
            interior = frozenset(mid)
            if interior in fam:
                continue
            route = [a.vertex] + mid + [b.vertex]
            times = {}
            for x, y in zip(mid, mid[1:]):
                key = (min(x, y), max(x, y))
                times[key] = forest.times[key]
            times[(min(a.vertex, w), max(a.vertex, w))] = [t1]
            times[(min(u, b.vertex), max(u, b.vertex))] = [t2]
            table = arrival_table(route, times, delta)
            if len(table) == len(route) - 1 and table[-1]:
                fam[interior] = Segment(interior, path_witness(route, table, delta).transitions)
    return fam


def valid_segment_families(forest: _Forest, ordering: DeltaOrdering, delta: int) -> Optional[SegmentFamily]:
    """One family per gap of the ordering, or ``None`` as soon as one is empty."""
    out = []
    for a, b in zip(ordering, ordering[1:]):
        fam = gap_family(forest, a, b, delta)
        if not fam:
            return None
        out.append(fam)
    return out


def multicolored_independent_set(families: Sequence[Sequence[frozenset]]) -> Optional[list[frozenset]]:
    """Pick one set per family, pairwise disjoint, by backtracking over the
    families from smallest to largest. Failed (family, used vertices)
    states are remembered."""
    order = sorted(range(len(families)), key=lambda i: len(families[i]))
    choice: list[Optional[frozenset]] = [None] * len(families)
    failed = set()

    def go(pos: int, used: frozenset) -> bool:
        if pos == len(order):
            return True
        if (pos, used) in failed:
            return False
        i = order[pos]
        for x in families[i]:
            if x & used:
                continue
            choice[i] = x
            if go(pos + 1, used | x):
                return True
        failed.add((pos, used))
        return False

    if go(0, frozenset()):
        return list(choice)
    return None


@dataclass
class TfvsSolveResult:
    answer: bool
    witness: Optional[RestlessPath] = None
    partitions: int = 0
    orderings: int = 0


def _add_pendants(g: TemporalGraph, q: Query, xs) -> tuple[TemporalGraph, int, int]:
    """Hang a fresh degree-one vertex off s (and z) when X touches it; the
    new vertex is active exactly when the old terminal is."""
    touched = {v for v, _ in xs}
    edges = list(g.time_edges)
    n = g.n
    s, z = q.source, q.target
    for old in (q.source, q.target):
        if old not in touched:
            continue
        new = n
        n += 1
        for t in sorted({t for u, w, t in g.time_edges if old in (u, w)}):
            edges.append((old, new, t))
        if old == q.source:
            s = new
        else:
            z = new
    return TemporalGraph(n, g.lifetime, tuple(edges)), s, z


def tfvs_solve(g: TemporalGraph, q: Query, xs) -> TfvsSolveResult:
    """Is there a Δ-restless (s, z)-path, given a timed feedback vertex set X?

    The length bound of ``q`` is not used: the search covers paths of any
    length.
    """
    xs = set(xs)
    q = q.normalized(g)
    if not is_tfvs(g, xs):
        raise ValueError("X is not a timed feedback vertex set")
    direct = direct_edge_witness(g, q)
    if direct is not None:
        return TfvsSolveResult(True, direct)
    h, s, z = _add_pendants(g, q, xs)
    delta = q.delta
    res = TfvsSolveResult(False)
    for part in enumerate_valid_partitions(xs):
        res.partitions += 1
        forest = _Forest(h, part, s, z)
        for ordering in enumerate_delta_orderings(part, s, z, delta):
            res.orderings += 1
            fams = valid_segment_families(forest, ordering, delta)
            if fams is None:
                continue
            pick = multicolored_independent_set([list(f) for f in fams])
            if pick is None:
                continue
            hops = [hop for fam, x in zip(fams, pick) for hop in fam[x].transitions]
            hops = [hop for hop in hops if hop[0] < g.n and hop[1] < g.n]
            res.answer, res.witness = True, RestlessPath(tuple(hops), q.delta)
            return res
    return res
