"""Timed feedback vertex sets via Subset Feedback Vertex Set.

A temporal graph is encoded as an SFVS instance with undeletable vertices,
the two reduction rules shrink it, and an exact branching solver finishes
it off. Vertices of SFVS instances are tuples:

* ``("a", v, t)``: appearance of vertex v at time t
* ``("e", u, w, 0|1|2)``: the three gadget vertices of underlying edge {u, w}
* ``("q", i)``: a contracted component of undeletable terminals
* ``("copy", i, j)``, ``("port", v, w)``, ``("port2", v, w)``, ``("fan", v, j)``:
  vertices added when undeletable vertices are eliminated
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, replace
from typing import Hashable, Iterable, Optional

from .core import GuardError, TemporalGraph, is_forest, underlying_graph

Appearance = tuple[int, int]
Adjacency = dict[Hashable, frozenset]


def remove_appearances(g: TemporalGraph, xs: Iterable[Appearance]) -> TemporalGraph:
    xs = set(xs)
    for v, t in xs:
        if not (0 <= v < g.n and 1 <= t <= g.lifetime):
            raise ValueError(f"invalid appearance ({v}, {t})")
    return g.with_edges(e for e in g.time_edges if (e[0], e[2]) not in xs and (e[1], e[2]) not in xs)


def is_tfvs(g: TemporalGraph, xs: Iterable[Appearance]) -> bool:
    h = remove_appearances(g, xs)
    return is_forest(h.n, underlying_graph(h).edges)


def active_appearances(g: TemporalGraph) -> list[Appearance]:
    """Appearances with at least one incident time edge; no others matter."""
    return sorted({(u, t) for u, _, t in g.time_edges} | {(v, t) for _, v, t in g.time_edges})


@dataclass(frozen=True)
class SfvsInstance:
    adj: Adjacency
    undeletable: frozenset
    terminals: frozenset
    k: int
    forced: frozenset = frozenset()
    trivial_no: bool = False

    @property
    def vertices(self):
        return self.adj.keys()

    def num_edges(self) -> int:
        return sum(len(n) for n in self.adj.values()) // 2


def _freeze(adj: dict) -> Adjacency:
    return {v: frozenset(n) for v, n in adj.items()}


def _add_edge(adj, a, b):
    adj.setdefault(a, set()).add(b)
    adj.setdefault(b, set()).add(a)


def tfvs_to_sfvsuv(g: TemporalGraph, x: int) -> SfvsInstance:
    """Encode "tfvn(g) <= x" as SFVS with undeletable vertices.

    Appearances of one vertex form a clique. Each underlying edge {u, w}
    becomes an undeletable path e_u - e_T - e_w whose middle is a terminal,
    with e_u joined to u's appearances at the edge's timestamps (same for w).
    """
    adj: dict = {}
    for v, t in active_appearances(g):
        adj[("a", v, t)] = set()
    by_vertex: dict = {}
    for _, v, t in adj:
        by_vertex.setdefault(v, []).append(("a", v, t))
    for apps in by_vertex.values():
        for a, b in itertools.combinations(apps, 2):
            _add_edge(adj, a, b)
    undeletable, terminals = set(), set()
    for (u, w), times in g.edge_times().items():
        eu, et, ew = ("e", u, w, 0), ("e", u, w, 1), ("e", u, w, 2)
        _add_edge(adj, eu, et)
        _add_edge(adj, et, ew)
        undeletable.update((eu, et, ew))
        terminals.add(et)
        for t in times:
            _add_edge(adj, eu, ("a", u, t))
            _add_edge(adj, ew, ("a", w, t))
    return SfvsInstance(_freeze(adj), frozenset(undeletable), frozenset(terminals), x)


# reduction rules

def _components(adj: Adjacency, within: set) -> list[list]:
    seen, comps = set(), []
    for v in sorted(within, key=repr):
        if v in seen:
            continue
        comp, todo = [], [v]
        seen.add(v)
        while todo:
            u = todo.pop()
            comp.append(u)
            for w in adj[u]:
                if w in within and w not in seen:
                    seen.add(w)
                    todo.append(w)
        comps.append(comp)
    return comps


def _no(inst: SfvsInstance) -> SfvsInstance:
    return replace(inst, trivial_no=True)


def apply_rr_undeletable_cycle(inst: SfvsInstance) -> SfvsInstance:
    """Trivial no if a terminal cycle uses only undeletable terminals plus at
    most one further undeletable vertex."""
    if inst.trivial_no:
        return inst
    hard = inst.undeletable & inst.terminals
    comps = _components(inst.adj, set(hard))
    for comp in comps:
        inner = sum(1 for v in comp for w in inst.adj[v] if w in hard) // 2
        if inner != len(comp) - 1:
            return _no(inst)
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    for u in inst.undeletable - inst.terminals:
        hits = [comp_of[w] for w in inst.adj[u] if w in comp_of]
        if len(hits) != len(set(hits)):
            return _no(inst)
    return inst


def apply_rr_merge_all(inst: SfvsInstance) -> SfvsInstance:
    """Contract every component of G[T ∩ V∞] into one undeletable terminal and
    take the vertices adjacent to a component twice into the solution."""
    inst = apply_rr_undeletable_cycle(inst)
    if inst.trivial_no:
        return inst
    hard = set(inst.undeletable & inst.terminals)
    comps = _components(inst.adj, hard)
    forced = set()
    for comp in comps:
        marked = set()
        for v in comp:
            for w in inst.adj[v]:
                if w in hard:
                    continue
                if w in marked:
                    forced.add(w)
                marked.add(w)
    if len(forced) > inst.k:
        return _no(inst)
    rename = {}
    for i, comp in enumerate(comps):
        if len(comp) > 1:
            for v in comp:
                rename[v] = ("q", i)
    adj: dict = {}
    for v, nbrs in inst.adj.items():
        if v in forced:
            continue
        a = rename.get(v, v)
        adj.setdefault(a, set())
        for w in nbrs:
            b = rename.get(w, w)
            if w not in forced and a != b:
                _add_edge(adj, a, b)

    def mapped(vs):
        return frozenset(rename.get(v, v) for v in vs if v not in forced)

    return SfvsInstance(_freeze(adj), mapped(inst.undeletable), mapped(inst.terminals),
                        inst.k - len(forced), inst.forced | frozenset(forced))


def eliminate_undeletable(inst: SfvsInstance) -> tuple[SfvsInstance, dict]:
    """Rewrite an instance without undeletable vertices.

    Each component of G[V∞ \\ T] is replaced by k+1 deletable copies sharing
    its neighbourhood. Each remaining undeletable terminal v is replaced, for
    each neighbour w, by a terminal ``port`` joined to w and a ``port2``
    behind it, all port2 vertices of v joined to k+1 ``fan`` vertices.

    Returns the instance and a map from new vertices to the original vertex
    whose deletion they stand for.

    The second stage needs V∞ to be an independent set of terminals. The
    first stage is only answer-preserving when no undeletable non-terminal
    has a terminal neighbour: two copies and two shared neighbours close a
    4-cycle, which is a new terminal cycle if one of those neighbours is a
    terminal. Instances built from temporal graphs have exactly that
    pattern, which is why :func:`chain_solve` does not use this function.
    """
    k = inst.k
    adj = {v: set(n) for v, n in inst.adj.items()}
    origin: dict = {}
    soft = set(inst.undeletable - inst.terminals)
    for i, comp in enumerate(_components(inst.adj, soft)):
        comp_set = set(comp)
        nbrs = {w for v in comp for w in inst.adj[v]} - comp_set
        for v in comp:
            for w in adj.pop(v):
                if w in adj:
                    adj[w].discard(v)
        for j in range(k + 1):
            c = ("copy", i, j)
            adj[c] = set()
            for w in nbrs:
                _add_edge(adj, c, w)
    hard = inst.undeletable & inst.terminals
    terminals = set(inst.terminals - hard)
    for v in sorted(hard, key=repr):
        nbrs = adj.pop(v)
        fans = [("fan", v, j) for j in range(k + 1)]
        for f in fans:
            adj[f] = set()
        for w in sorted(nbrs, key=repr):
            adj[w].discard(v)
            port, port2 = ("port", v, w), ("port2", v, w)
            _add_edge(adj, w, port)
            _add_edge(adj, port, port2)
            for f in fans:
                _add_edge(adj, port2, f)
            terminals.add(port)
            origin[port] = origin[port2] = w
    return SfvsInstance(_freeze(adj), frozenset(), frozenset(terminals), k, inst.forced), origin


# exact solver

_ORDERED: list = [None, None]  # last adjacency seen and its repr-sorted neighbour lists


def _ordered(adj: Adjacency) -> dict:
    if _ORDERED[0] is not adj:
        _ORDERED[:] = [adj, {v: sorted(n, key=repr) for v, n in adj.items()}]
    return _ORDERED[1]


def terminal_cycle(adj: Adjacency, terminals, removed=frozenset()) -> Optional[list]:
    """A shortest simple cycle through some terminal of ``G - removed``.

    For each terminal t a BFS labels every vertex with the neighbour of t its
    tree path starts with; an edge joining two different labels closes a
    cycle through t. The BFS stops once it cannot beat the best cycle so
    far. Ties go to the terminal and edge found first in ``repr`` order, so
    the result is deterministic.
    """
    nbrs = _ordered(adj)
    best = None
    for t in sorted(terminals, key=repr):
        if t in removed or t not in adj:
            continue
        dist, branch, parent = {t: 0}, {t: None}, {t: None}
        order = deque()
        for w in nbrs[t]:
            if w in removed:
                continue
            dist[w], branch[w], parent[w] = 1, w, t
            order.append(w)
        while order:
            u = order.popleft()
            if best is not None and 2 * dist[u] + 1 >= best[0]:
                break
            for w in nbrs[u]:
                if w in removed or w == t:
                    continue
                if w not in dist:
                    dist[w], branch[w], parent[w] = dist[u] + 1, branch[u], u
                    order.append(w)
                elif branch[w] != branch[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best[0]:
                        best = (length, t, u, w, parent)
        if best is not None and best[0] == 3:
            break
    if best is None:
        return None
    _, t, u, w, parent = best
    left, right = [], []
    x = u
    while x is not None:
        left.append(x)
        x = parent[x]
    x = w
    while x != t:
        right.append(x)
        x = parent[x]
    return left[::-1] + right


def has_terminal_cycle(adj: Adjacency, terminals, removed=frozenset()) -> bool:
    """Does some terminal lie on a cycle of G - removed? (t is on a cycle iff
    some neighbour w of t reaches t without the edge tw.)"""
    for t in terminals:
        if t in removed or t not in adj:
            continue
        nbrs = [w for w in adj[t] if w not in removed]
        if len(nbrs) < 2:
            continue
        comp = {}
        for root in nbrs:
            if root in comp:
                return True
            comp[root] = root
            todo = [root]
            while todo:
                u = todo.pop()
                for x in adj[u]:
                    if x == t or x in removed:
                        continue
                    if x in comp:
                        continue
                    comp[x] = root
                    todo.append(x)
    return False


SFVS_GUARD_K = 12
SFVS_GUARD_V = 20_000


def solve_sfvs_exact(adj: Adjacency, terminals, k: int, undeletable=frozenset(),
                     minimum: bool = True, force: bool = False, max_nodes: Optional[int] = None) -> Optional[set]:
    """A smallest set of at most ``k`` deletable vertices hitting every cycle
    through a terminal, or ``None``.

    Branches on the deletable vertices of a shortest terminal cycle. A
    degree-2 vertex next to a deletable vertex of larger degree is never
    branched on (every cycle through it passes that neighbour), and a
    greedy packing of cycles gives a lower bound. With ``minimum=False``
    only budget ``k`` itself is searched. ``max_nodes`` caps the number of
    search nodes; going over it raises :class:`GuardError`.
    """
    if not force and os.environ.get("RTP_GUARD_OVERRIDE") != "1":
        if k > SFVS_GUARD_K or len(adj) > SFVS_GUARD_V:
            raise GuardError(f"exact SFVS refuses k={k}, |V|={len(adj)}")
    undeletable = frozenset(undeletable)
    terminals = frozenset(terminals)
    failed: dict = {}
    nodes = 0

    def degree(v, removed):
        return sum(1 for w in adj[v] if w not in removed)

    def packing_bound(removed, cap):
        gone = set(removed)
        count = 0
        while count <= cap:
            cyc = terminal_cycle(adj, terminals, frozenset(gone))
            if cyc is None:
                break
            soft = [v for v in cyc if v not in undeletable]
            if not soft:
                return cap + 1
            gone.update(soft)
            count += 1
        return count

    def search(removed: frozenset, budget: int) -> Optional[frozenset]:
        nonlocal nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise GuardError(f"exact SFVS gave up after {max_nodes} search nodes")
        cyc = terminal_cycle(adj, terminals, removed)
        if cyc is None:
            return removed
        if budget == 0 or failed.get(removed, -1) >= budget:
            return None
        if packing_bound(removed, budget) > budget:
            failed[removed] = budget
            return None
        soft = [v for v in cyc if v not in undeletable]
        cands = []
        for v in soft:
            if degree(v, removed) == 2 and any(
                    w not in undeletable and w not in removed and degree(w, removed) > 2 for w in adj[v]):
                continue
            cands.append(v)
        if not cands:
            cands = soft[:1]
        for v in cands:
            got = search(removed | {v}, budget - 1)
            if got is not None:
                return got
        failed[removed] = budget
        return None

    budgets = range(k + 1) if minimum else [k]
    for b in budgets:
        got = search(frozenset(), b)
        if got is not None:
            return set(got)
    return None


def _underlying_cycle(g: TemporalGraph, removed: frozenset) -> Optional[list[tuple[int, int, int]]]:
    """A shortest cycle of G↓(g - removed) as time edges, or ``None``.

    Surviving timestamps are chosen so that consecutive edges share a
    timestamp as often as possible, which keeps the set of appearances on
    the cycle small.
    """
    alive: dict = {}
    for u, w, t in g.time_edges:
        if (u, t) not in removed and (w, t) not in removed:
            alive.setdefault((u, w), []).append(t)
    adj: dict = {}
    for u, w in alive:
        adj.setdefault(u, []).append(w)
        adj.setdefault(w, []).append(u)
    best = None
    for r in sorted(adj):
        dist, parent = {r: 0}, {r: None}
        todo = deque([r])
        while todo:
            u = todo.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w], parent[w] = dist[u] + 1, u
                    todo.append(w)
                elif parent[u] != w and (best is None or dist[u] + dist[w] + 1 < best[0]):
                    best = (dist[u] + dist[w] + 1, u, w, dict(parent))
    if best is None:
        return None
    _, u, w, parent = best
    left, right = [u], [w]
    while parent[left[-1]] is not None:
        left.append(parent[left[-1]])
    while parent[right[-1]] is not None:
        right.append(parent[right[-1]])
    while len(left) > 1 and len(right) > 1 and left[-2] == right[-2]:
        left.pop()
        right.pop()
    cycle = left[::-1] + right[:-1]
    pairs = list(zip(cycle, cycle[1:] + cycle[:1]))
    options = [alive[(min(a, b), max(a, b))] for a, b in pairs]
    best_times, best_cost = None, None
    for first in options[0]:
        # cost[t] = fewest timestamp changes so far with the current edge at t
        cost = {first: (0, (first,))}
        for opts in options[1:]:
            cost = {t: min((c + (t != tp), seq + (t,)) for tp, (c, seq) in cost.items()) for t in opts}
        c, seq = min((c + (seq[-1] != first), seq) for c, seq in cost.values())
        if best_cost is None or c < best_cost:
            best_times, best_cost = seq, c
    return [(a, b, t) for (a, b), t in zip(pairs, best_times)]


def solve_tfvs_branching(g: TemporalGraph, x: int, failed: Optional[dict] = None) -> Optional[set[Appearance]]:
    """A timed feedback vertex set of size at most ``x``, or ``None``.

    Any solution must delete an endpoint appearance of some time edge on
    each surviving cycle, so branching over the at most 2|C| appearances of
    a shortest surviving cycle is exhaustive. Pass the same ``failed`` dict
    to calls with growing ``x`` on one graph to reuse refuted states.
    """
    if failed is None:
        failed = {}

    def hits(cyc):
        return sorted({(a, t) for a, b, t in cyc} | {(b, t) for a, b, t in cyc})

    def packing_bound(removed, cap):
        gone, count = set(removed), 0
        while count <= cap:
            cyc = _underlying_cycle(g, frozenset(gone))
            if cyc is None:
                break
            gone.update(hits(cyc))
            count += 1
        return count

    def search(removed: frozenset, budget: int) -> Optional[frozenset]:
        cyc = _underlying_cycle(g, removed)
        if cyc is None:
            return removed
        if budget == 0 or failed.get(removed, -1) >= budget:
            return None
        if packing_bound(removed, budget) > budget:
            failed[removed] = budget
            return None
        cands = hits(cyc)
        for app in cands:
            got = search(removed | {app}, budget - 1)
            if got is not None:
                return got
        failed[removed] = budget
        return None

    got = search(frozenset(), x)
    return None if got is None else set(got)


CHAIN_MAX_NODES = 2_000


def chain_solve(g: TemporalGraph, x: int, max_nodes: Optional[int] = None) -> Optional[set[Appearance]]:
    """The appearance-gadget construction, both reduction rules and the exact SFVS solver at
    budget ``x``. A returned set is always a timed feedback vertex set, but
    ``None`` does not prove that none of size ``x`` exists: the gadget of an
    underlying edge stays connected when its endpoints survive at different
    timestamps, which can demand more deletions than necessary. ``max_nodes``
    is passed on to the SFVS search."""
    inst = apply_rr_merge_all(tfvs_to_sfvsuv(g, x))
    if inst.trivial_no:
        return None
    sol = solve_sfvs_exact(inst.adj, inst.terminals, inst.k, inst.undeletable, minimum=False, max_nodes=max_nodes)
    if sol is None:
        return None
    return {(v[1], v[2]) for v in sol | inst.forced if v[0] == "a"}


def compute_tfvs(g: TemporalGraph, max_budget: int = SFVS_GUARD_K) -> set[Appearance]:
    """A minimum timed feedback vertex set.

    Direct branching on surviving cycles finds the smallest budget x that
    admits a solution. The SFVS chain is then run at budget x and its
    solution is preferred when it finds one; it is exact whenever every
    underlying edge carries a single timestamp, but can miss otherwise
    (see :func:`chain_solve`). The chain's search is capped at
    ``CHAIN_MAX_NODES`` nodes; past that the branching solution is kept.
    """
    failed: dict = {}
    for x in range(max_budget + 1):
        xs = solve_tfvs_branching(g, x, failed)
        if xs is None:
            continue
        try:
            via_chain = chain_solve(g, x, CHAIN_MAX_NODES)
        except GuardError:
            via_chain = None
        if via_chain is not None:
            xs = via_chain
        if not is_tfvs(g, xs):
            raise AssertionError("solver returned a set that does not break every cycle")
        return xs
    raise GuardError(f"no timed feedback vertex set of size <= {max_budget}")
