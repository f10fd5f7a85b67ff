"""Temporal graph model, text format, witness validation and preprocessing."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

TimeEdge = tuple[int, int, int]


class ParseError(ValueError):
    """Malformed temporal-graph or witness document."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class GuardError(RuntimeError):
    """An exponential routine was asked to run on an instance above its guard."""


@dataclass(frozen=True)
class TemporalGraph:
    """Vertices ``0..n-1`` and time edges ``(u, v, t)`` with ``u < v`` and ``1 <= t <= lifetime``.

    The edge tuple is normalized on construction: endpoints are ordered,
    duplicates collapse and the result is sorted by ``(t, u, v)``.
    """

    n: int
    lifetime: int
    time_edges: tuple[TimeEdge, ...] = ()
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.lifetime < 1:
            raise ValueError("lifetime must be at least 1")
        norm = set()
        for u, v, t in self.time_edges:
            u, v, t = int(u), int(v), int(t)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"vertex id out of range in edge ({u}, {v}, {t})")
            if not 1 <= t <= self.lifetime:
                raise ValueError(f"timestep {t} outside [1, {self.lifetime}]")
            if u > v:
                u, v = v, u
            norm.add((u, v, t))
        object.__setattr__(self, "time_edges", tuple(sorted(norm, key=lambda e: (e[2], e[0], e[1]))))
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must name every vertex")

    def size(self) -> int:
        """|G| = n plus the number of non-empty layers."""
        return self.n + len({t for _, _, t in self.time_edges})

    def layers(self) -> list[list[tuple[int, int]]]:
        """Edge lists indexed by timestep; index 0 is always empty."""
        out = [[] for _ in range(self.lifetime + 1)]
        for u, v, t in self.time_edges:
            out[t].append((u, v))
        return out

    def edge_times(self) -> dict[tuple[int, int], list[int]]:
        """Sorted timestamp list for every underlying edge."""
        times = defaultdict(list)
        for u, v, t in self.time_edges:
            times[(u, v)].append(t)
        return dict(times)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def with_edges(self, edges: Iterable[TimeEdge], lifetime: Optional[int] = None) -> "TemporalGraph":
        return TemporalGraph(self.n, self.lifetime if lifetime is None else lifetime, tuple(edges), self.labels)


@dataclass(frozen=True)
class Query:
    source: int
    target: int
    delta: int
    max_length: Optional[int] = None

    def check(self, g: TemporalGraph) -> None:
        if not (0 <= self.source < g.n and 0 <= self.target < g.n):
            raise ValueError("source and target must be vertices of the graph")
        if self.source == self.target:
            raise ValueError("source and target must differ")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.max_length is not None and self.max_length < 0:
            raise ValueError("max_length must be non-negative")

    def normalized(self, g: TemporalGraph) -> "Query":
        """Validate against ``g``, clamp Δ to the lifetime and fill in k = n - 1."""
        self.check(g)
        k = g.n - 1 if self.max_length is None else self.max_length
        return Query(self.source, self.target, min(self.delta, g.lifetime), k)

    @property
    def k(self) -> int:
        if self.max_length is None:
            raise ValueError("query is not normalized")
        return self.max_length


@dataclass(frozen=True)
class RestlessPath:
    transitions: tuple[TimeEdge, ...]
    delta: int

    @property
    def vertices(self) -> list[int]:
        if not self.transitions:
            return []
        return [self.transitions[0][0]] + [b for _, b, _ in self.transitions]

    def __len__(self) -> int:
        return len(self.transitions)

    def times(self) -> list[int]:
        return [t for _, _, t in self.transitions]


@dataclass(frozen=True)
class StaticGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def underlying_graph(g: TemporalGraph) -> StaticGraph:
    return StaticGraph(g.n, tuple(sorted({(u, v) for u, v, _ in g.time_edges})))


def is_forest(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# text format

def parse(text: str) -> TemporalGraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "tg":
                raise ParseError("expected header 'tg <n> <lifetime>'", lineno)
            try:
                n, lifetime = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("header values must be integers", lineno) from None
            if n < 0 or lifetime < 1:
                raise ParseError("need n >= 0 and lifetime >= 1", lineno)
            header = (n, lifetime)
            continue
        if len(parts) != 3:
            raise ParseError("expected '<u> <v> <t>'", lineno)
        try:
            u, v, t = (int(x) for x in parts)
        except ValueError:
            raise ParseError("edge fields must be integers", lineno) from None
        n, lifetime = header
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range [0, {n})", lineno)
        if not 1 <= t <= lifetime:
            raise ParseError(f"timestep {t} outside [1, {lifetime}]", lineno)
        edges.append((u, v, t))
    if header is None:
        raise ParseError("missing header")
    return TemporalGraph(header[0], header[1], tuple(edges))


def serialize(g: TemporalGraph) -> str:
    lines = [f"tg {g.n} {g.lifetime}"]
    lines += [f"{u} {v} {t}" for u, v, t in g.time_edges]
    return "\n".join(lines) + "\n"


def format_witness(p: RestlessPath) -> str:
    return "".join(f"{u} {v} {t}\n" for u, v, t in p.transitions)


def parse_witness(text: str, delta: int) -> RestlessPath:
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            u, v, t = (int(x) for x in line.split())
        except ValueError:
            raise ParseError("expected '<u> <v> <t>'", lineno) from None
        transitions.append((u, v, t))
    return RestlessPath(tuple(transitions), delta)


# witnesses

def validate_witness(g: TemporalGraph, q: Query, p: RestlessPath) -> tuple[bool, Optional[str]]:
    """Check that ``p`` is a Δ-restless (s, z)-path of ``g`` within the length cap.

    Returns ``(True, None)`` or ``(False, reason)`` naming the first violation.
    """
    q = q.normalized(g)
    tr = p.transitions
    if not tr:
        return False, "empty path"
    if tr[0][0] != q.source:
        return False, f"path starts at {tr[0][0]}, not at the source {q.source}"
    if tr[-1][1] != q.target:
        return False, f"path ends at {tr[-1][1]}, not at the target {q.target}"
    if len(tr) > q.k:
        return False, f"length {len(tr)} exceeds the bound {q.k}"
    edges = set(g.time_edges)
    for i, (u, v, t) in enumerate(tr):
        if i and tr[i - 1][1] != u:
            return False, f"transition {i} does not continue from vertex {tr[i - 1][1]}"
        if (min(u, v), max(u, v), t) not in edges:
            return False, f"({u}, {v}, {t}) is not a time edge"
    for i in range(1, len(tr)):
        prev, cur = tr[i - 1][2], tr[i][2]
        if cur < prev:
            return False, f"time goes backwards at vertex {tr[i][0]} ({prev} -> {cur})"
        if cur - prev > q.delta:
            return False, f"waiting time {cur - prev} at vertex {tr[i][0]} exceeds delta {q.delta}"
    seen = set()
    for v in p.vertices:
        if v in seen:
            return False, f"vertex {v} visited twice"
        seen.add(v)
    return True, None


def direct_edge_witness(g: TemporalGraph, q: Query) -> Optional[RestlessPath]:
    """The one-hop path over the earliest {s, z} time edge, if any."""
    a, b = sorted((q.source, q.target))
    for u, v, t in g.time_edges:
        if (u, v) == (a, b):
            return RestlessPath(((q.source, q.target, t),), q.delta)
    return None


# preprocessing

def low_degree_reduce(g: TemporalGraph, q: Query) -> TemporalGraph:
    """Exhaustively drop vertices other than s and z of underlying degree at most one.

    Vertex ids are kept; a removed vertex simply loses all its time edges.
    """
    adj = underlying_graph(g).adjacency()
    keep = {q.source, q.target}
    removed = [False] * g.n
    queue = deque(v for v in range(g.n) if v not in keep and len(adj[v]) <= 1)
    while queue:
        v = queue.popleft()
        if removed[v]:
            continue
        removed[v] = True
        for w in adj[v]:
            adj[w].discard(v)
            if w not in keep and not removed[w] and len(adj[w]) <= 1:
                queue.append(w)
        adj[v].clear()
    return g.with_edges(e for e in g.time_edges if not removed[e[0]] and not removed[e[1]])


def pad_delta(g: TemporalGraph, delta: int) -> TemporalGraph:
    """Insert an edgeless layer after every ``delta`` consecutive layers.

    A Δ-restless path in ``g`` corresponds to a (Δ+1)-restless path in the result.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")

    def shift(t):
        return t + (t - 1) // delta

    return g.with_edges(((u, v, shift(t)) for u, v, t in g.time_edges), lifetime=shift(g.lifetime))


def restrict(g: TemporalGraph, keep: Iterable[tuple[int, int]]) -> TemporalGraph:
    """Keep only time edges whose underlying edge is in ``keep``."""
    keep = {(min(u, v), max(u, v)) for u, v in keep}
    return g.with_edges(e for e in g.time_edges if (e[0], e[1]) in keep)


def fig1() -> tuple[TemporalGraph, dict[str, int]]:
    """The running example: s=0, a=1, b=2, c=3, d=4, z=5, lifetime 6."""
    names = ("s", "a", "b", "c", "d", "z")
    ids = {x: i for i, x in enumerate(names)}
    raw = [("s", "a", 2), ("s", "b", 1), ("a", "c", 4), ("b", "c", 2),
           ("c", "d", 4), ("d", "b", 4), ("b", "z", 6), ("s", "d", 2)]
    edges = tuple((ids[u], ids[v], t) for u, v, t in raw)
    return TemporalGraph(6, 6, edges, names), ids


def path_from_vertices(vertices: Sequence[int], times: Sequence[int], delta: int) -> RestlessPath:
    return RestlessPath(tuple((vertices[i], vertices[i + 1], times[i]) for i in range(len(times))), delta)
