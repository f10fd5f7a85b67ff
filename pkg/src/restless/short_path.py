"""Short restless paths via Independent Path and representative families.

The expansion digraph is paired with the (k+1)-truncated partition matroid
whose parts are the appearance classes V'(v). A class-disjoint (s, z)-dipath
with at most k arcs is exactly a restless path of length at most k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import GuardError, Query, RestlessPath, TemporalGraph, direct_edge_witness
from .expansion import SOURCE, TARGET, ExpansionDigraph, build_expansion
from .field_matroid import MatroidRep, build_truncated_partition_matroid, extend_wedges, independent_rows


@dataclass(frozen=True)
class IndependentPathInstance:
    succ: Sequence[Sequence[int]]
    pred: Sequence[Sequence[int]]
    source: int
    sink: int
    rep: MatroidRep


@dataclass
class ShortPathResult:
    answer: bool
    length: Optional[int] = None
    witness: Optional[RestlessPath] = None
    dipath: Optional[list[int]] = None
    max_family: int = 0


def expansion_matroid(d: ExpansionDigraph, k: int) -> MatroidRep:
    classes = d.classes()
    parts = [classes[v] for v in sorted(classes, key=lambda v: min(classes[v]))]
    return build_truncated_partition_matroid(parts, k)


def reduce_to_independent_path(g: TemporalGraph, q: Query) -> tuple[IndependentPathInstance, ExpansionDigraph]:
    q = q.normalized(g)
    d = build_expansion(g, q)
    rep = expansion_matroid(d, q.k)
    return IndependentPathInstance(d.succ, d.pred, SOURCE, TARGET, rep), d


def solve_independent_path(inst: IndependentPathInstance) -> ShortPathResult:
    """Dynamic program over path lengths keeping representative families.

    ``T[w, i]`` holds independent vertex sets of dipaths with ``i`` arcs from
    the source to ``w``; after each level it is cut down to an
    (r - i - 1)-representative subfamily. The first level at which the sink
    holds a set is the length of a shortest independent dipath.
    """
    rep = inst.rep
    r, p = rep.rank, rep.p
    col_index = rep.column_of
    cols = rep.matrix.T  # node column vectors, one row per ground element

    def col(v):
        return cols[col_index[v]]

    res = ShortPathResult(False)
    if r == 0 or not rep.is_independent([inst.source]):
        return res
    # level entries: node -> (sets, wedge matrix, back pointers)
    level = {inst.source: ([frozenset([inst.source])], col(inst.source)[None, :] % p, [None])}
    history = [level]
    res.max_family = 1
    for i in range(1, r):
        incoming: dict[int, list[tuple[int, int]]] = {}
        for v in level:
            for w in inst.succ[v]:
                incoming.setdefault(w, []).append(v)
        nxt = {}
        for w in sorted(incoming):
            sets, rows, back = [], [], []
            for v in incoming[w]:
                vsets, vw, _ = level[v]
                for j, x in enumerate(vsets):
                    if w in x:
                        continue
                    sets.append(x | {w})
                    rows.append(vw[j])
                    back.append((v, j))
            if not sets:
                continue
            w_old = np.array(rows, dtype=np.int64)
            ext = extend_wedges(w_old, np.broadcast_to(col(w), (len(sets), r)), i, p)
            keep, seen = [], set()
            for j in np.nonzero(ext.any(axis=1))[0]:
                if sets[j] not in seen:
                    seen.add(sets[j])
                    keep.append(j)
            if not keep:
                continue
            ext = ext[keep]
            basis = independent_rows(ext, p)
            chosen = [keep[b] for b in basis]
            nxt[w] = ([sets[j] for j in chosen], ext[basis], [back[j] for j in chosen])
            res.max_family = max(res.max_family, len(chosen))
        history.append(nxt)
        if inst.sink in nxt:
            res.answer, res.length = True, i
            res.dipath = _unwind(history, inst.sink)
            return res
        if not nxt:
            break
        level = nxt
    return res


def _unwind(history, sink) -> list[int]:
    path = [sink]
    node, j = sink, 0
    for i in range(len(history) - 1, 0, -1):
        node, j = history[i][node][2][j]
        path.append(node)
    return path[::-1]


def dipath_to_restless(g: TemporalGraph, q: Query, d: ExpansionDigraph, dipath: Sequence[int]) -> RestlessPath:
    """Turn an (s, z)-dipath of the expansion into transitions of ``g``."""
    q = q.normalized(g)
    times = g.edge_times()
    hops = []
    for a, b in zip(dipath, dipath[1:]):
        u, v = d.vertex[a], d.vertex[b]
        if b != TARGET:
            t = d.time[b]
        else:
            t0 = d.time[a]
            t = min(t for t in times[(min(u, v), max(u, v))] if t0 <= t <= t0 + q.delta)
        hops.append((u, v, t))
    return RestlessPath(tuple(hops), q.delta)


def solve_short(g: TemporalGraph, q: Query) -> ShortPathResult:
    """Decide whether a Δ-restless (s, z)-path with at most k transitions exists."""
    q = q.normalized(g)
    if q.k == 0:
        return ShortPathResult(False)
    direct = direct_edge_witness(g, q)
    if direct is not None:
        return ShortPathResult(True, 1, direct)
    d = build_expansion(g, q)
    # a path visits each class at most once, so longer bounds add nothing
    k = min(q.k, len(d.classes()) - 1)
    inst = IndependentPathInstance(d.succ, d.pred, SOURCE, TARGET, expansion_matroid(d, k))
    res = solve_independent_path(inst)
    if res.answer:
        res.witness = dipath_to_restless(g, q, d, res.dipath)
    return res


# arithmetic circuits

@dataclass(frozen=True)
class ArithmeticCircuit:
    """Gates are ``("var", index)``, ``("const", c)``, ``("add", children)``
    or ``("mul", (a, b))``; children precede their parents. Variable 0 is
    x_⊥ and variable ``i + 1`` is x_i."""

    gates: tuple
    output: int
    num_vars: int

    def __len__(self):
        return len(self.gates)


class _CircuitBuilder:
    def __init__(self):
        self.gates = []

    def add(self, kind, arg):
        self.gates.append((kind, arg))
        return len(self.gates) - 1


def build_circuit(succ: Sequence[Sequence[int]], classes: Sequence[int], source: int, sink: int, k: int) -> ArithmeticCircuit:
    """Circuit for x_⊥ · (Q_z^1 + ... + Q_z^k), where Q_s^0 = x_0,
    Q_v^0 = x_⊥ for v ≠ s and Q_v^j = x_{c(v)} · Σ_{(u,v)} Q_u^{j-1}.

    ``classes[v]`` is the class index of node v; the source must be alone in
    class 0 and the sink alone in the largest class.
    """
    n_cls = max(classes) + 1
    if classes[source] != 0 or classes[sink] != n_cls - 1:
        raise ValueError("source must be in class 0 and sink in the last class")
    if sum(c == 0 for c in classes) != 1 or sum(c == n_cls - 1 for c in classes) != 1:
        raise ValueError("source and sink classes must be singletons")
    nodes = range(len(classes))
    pred = [[] for _ in nodes]
    for u in nodes:
        for v in succ[u]:
            pred[v].append(u)
    b = _CircuitBuilder()
    x_bot = b.add("var", 0)
    x = [b.add("var", i + 1) for i in range(n_cls)]
    q = [x[0] if v == source else x_bot for v in nodes]
    sink_terms = []
    for _ in range(k):
        nq = []
        for v in nodes:
            s = b.add("add", tuple(q[u] for u in pred[v]))
            nq.append(b.add("mul", (s, x[classes[v]])))
        q = nq
        sink_terms.append(q[sink])
    total = b.add("add", tuple(sink_terms))
    out = b.add("mul", (x_bot, total))
    return ArithmeticCircuit(tuple(b.gates), out, n_cls + 1)


def circuit_for_expansion(d: ExpansionDigraph, k: int) -> ArithmeticCircuit:
    order = {SOURCE: 0}
    inner = sorted({v for i, v in enumerate(d.vertex) if i >= 2})
    for j, v in enumerate(inner, start=1):
        order[v] = j
    order[d.vertex[TARGET]] = len(inner) + 1
    classes = [0] + [len(inner) + 1] + [order[d.vertex[i]] for i in range(2, d.num_nodes)]
    return build_circuit(d.succ, classes, SOURCE, TARGET, k)


def detect_multilinear(c: ArithmeticCircuit, degree_cap: int, limit: int = 200_000) -> bool:
    """Expand the circuit keeping only multilinear monomials of degree at most
    ``degree_cap``. Constants are non-negative integers, so no cancellation
    can occur and dropping a monomial early is safe."""
    vals: list[set[int]] = []
    total = 0
    for kind, arg in c.gates:
        if kind == "var":
            val = {1 << arg} if degree_cap >= 1 else set()
        elif kind == "const":
            if arg < 0:
                raise ValueError("constants must be non-negative")
            val = {0} if arg else set()
        elif kind == "add":
            val = set()
            for ch in arg:
                val |= vals[ch]
        elif kind == "mul":
            a, bb = vals[arg[0]], vals[arg[1]]
            val = {m1 | m2 for m1 in a for m2 in bb
                   if not m1 & m2 and (m1 | m2).bit_count() <= degree_cap}
        else:
            raise ValueError(f"unknown gate {kind}")
        total += len(val)
        if total > limit:
            raise GuardError("monomial expansion exceeds the detector guard")
        vals.append(val)
    return bool(vals[c.output])
