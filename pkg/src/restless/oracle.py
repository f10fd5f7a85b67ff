"""Definitional exhaustive search, kept deliberately simple.

Every other solver in the package is checked against this module, so it
shares no code with them beyond the data model.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .core import GuardError, Query, RestlessPath, TemporalGraph

GUARD_N = 20


def _guard(g: TemporalGraph, force: bool) -> None:
    if force or os.environ.get("RTP_GUARD_OVERRIDE") == "1":
        return
    if g.n > GUARD_N:
        raise GuardError(f"oracle refuses n={g.n} > {GUARD_N} (pass force=True or set RTP_GUARD_OVERRIDE=1)")


@dataclass
class OracleResult:
    exists: bool
    shortest_length: Optional[int] = None
    shortest: Optional[RestlessPath] = None
    all_witnesses: list[RestlessPath] = field(default_factory=list)
    arrival_times: set[int] = field(default_factory=set)


def _incident(g: TemporalGraph) -> dict[int, list[tuple[int, int]]]:
    inc = defaultdict(list)
    for u, v, t in g.time_edges:
        inc[u].append((t, v))
        inc[v].append((t, u))
    for v in inc:
        inc[v].sort()
    return inc


def brute_force(g: TemporalGraph, q: Query, enumerate_all: bool = False,
                limit: int = 10_000, force: bool = False) -> OracleResult:
    """Enumerate Δ-restless (s, z)-paths of length at most k by DFS.

    Without ``enumerate_all`` the search still explores every path, so the
    shortest length and the full set of arrival times at z are exact.
    """
    _guard(g, force)
    q = q.normalized(g)
    s, z, delta, k = q.source, q.target, q.delta, q.k
    inc = _incident(g)
    res = OracleResult(False)
    visited = [False] * g.n
    visited[s] = True
    stack: list[tuple[int, int, int]] = []

    def record():
        p = RestlessPath(tuple(stack), delta)
        res.exists = True
        res.arrival_times.add(stack[-1][2])
        if res.shortest_length is None or len(stack) < res.shortest_length:
            res.shortest_length = len(stack)
            res.shortest = p
        if enumerate_all and len(res.all_witnesses) < limit:
            res.all_witnesses.append(p)

    def dfs(v, t_prev):
        if len(stack) == k:
            return
        for t, w in inc.get(v, ()):
            if t_prev is not None and not (t_prev <= t <= t_prev + delta):
                continue
            if visited[w]:
                continue
            stack.append((v, w, t))
            if w == z:
                record()
            else:
                visited[w] = True
                dfs(w, t)
                visited[w] = False
            stack.pop()

    dfs(s, None)
    return res


def brute_force_walk(g: TemporalGraph, q: Query, force: bool = False) -> bool:
    """Is there a Δ-restless (s, z)-walk? States are (vertex, arrival time)."""
    _guard(g, force)
    q = q.normalized(g)
    s, z, delta = q.source, q.target, q.delta
    inc = _incident(g)
    seen = set()
    todo = []
    for t, w in inc.get(s, ()):
        if (w, t) not in seen:
            seen.add((w, t))
            todo.append((w, t))
    while todo:
        v, t_prev = todo.pop()
        if v == z:
            return True
        for t, w in inc.get(v, ()):
            if t_prev <= t <= t_prev + delta and (w, t) not in seen:
                seen.add((w, t))
                todo.append((w, t))
    return False
