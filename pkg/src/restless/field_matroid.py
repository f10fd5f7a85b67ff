"""Linear algebra over a prime field, Vandermonde representations of
truncated partition matroids, and representative families.

A p-set X of columns is mapped to its vector of p x p minors (its exterior
product). X ⊎ Y is independent iff the wedge of X times the wedge of Y is
non-zero, and that pairing is linear in the wedge of X, so any row basis of
the wedge vectors of a family is a representative subfamily.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_prime_at_least(q: int) -> int:
    if q < 1:
        raise ValueError("q must be positive")
    p = max(q, 2)
    while not is_prime(p):
        p += 1
    return p


# dense mod-p elimination

def row_reduce(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns, left to right."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def det_mod_p(a: np.ndarray, p: int) -> int:
    m = np.array(a, dtype=np.int64) % p
    n = m.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            det = -det
        piv = int(m[c, c])
        det = (det * piv) % p
        inv = pow(piv, -1, p)
        if c + 1 < n:
            f = (m[c + 1:, c] * inv) % p
            m[c + 1:] = (m[c + 1:] - np.outer(f, m[c])) % p
    return det % p


# matroids

@dataclass(frozen=True)
class MatroidRep:
    """An ``r x |U|`` matrix over F_p; column ``j`` represents ``labels[j]``."""

    matrix: np.ndarray
    labels: tuple[Hashable, ...]
    p: int

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    @property
    def column_of(self) -> dict:
        return {x: j for j, x in enumerate(self.labels)}

    def columns(self, xs: Iterable[Hashable]) -> np.ndarray:
        idx = self.column_of
        return self.matrix[:, [idx[x] for x in xs]]

    def is_independent(self, xs: Iterable[Hashable]) -> bool:
        xs = list(xs)
        if len(set(xs)) != len(xs):
            return False
        return rank_mod_p(self.columns(xs), self.p) == len(xs)


def build_truncated_partition_matroid(parts: Sequence[Sequence[Hashable]], k: int) -> MatroidRep:
    """Rank-(k+1) representation: a set is independent iff it has at most
    k+1 elements and at most one per part. Part ``i`` (0-based) gets the
    field element ``i`` and every element of it the column
    ``(i^0, i^1, ..., i^k)`` with ``0^0 = 1``.
    """
    if not parts:
        raise ValueError("need at least one part")
    labels = [x for part in parts for x in part]
    if len(set(labels)) != len(labels):
        raise ValueError("parts must be disjoint")
    p = smallest_prime_at_least(len(parts))
    r = k + 1
    cols = []
    for i, part in enumerate(parts):
        v = vandermonde_column(i, r, p)
        cols.extend([v] * len(part))
    matrix = np.array(cols, dtype=np.int64).T.reshape(r, len(labels))
    return MatroidRep(matrix, tuple(labels), p)


def vandermonde_column(x: int, r: int, p: int) -> list[int]:
    col, acc = [], 1
    for _ in range(r):
        col.append(acc)
        acc = (acc * x) % p
    return col


# exterior products

@lru_cache(maxsize=None)
def colex_subsets(r: int, p: int) -> tuple[tuple[int, ...], ...]:
    """All p-subsets of range(r), colexicographically ordered."""
    return tuple(sorted(combinations(range(r), p), key=lambda c: c[::-1]))


def minor_vector(cols: np.ndarray, p_field: int) -> np.ndarray:
    """All maximal minors of an ``r x p`` matrix, one per colex row subset."""
    r, p = cols.shape
    if p == 0:
        return np.ones(1, dtype=np.int64)
    return np.array([det_mod_p(cols[list(rows), :], p_field) for rows in colex_subsets(r, p)], dtype=np.int64)


@lru_cache(maxsize=None)
def _extension_tables(r: int, p: int):
    """Index tables for the Laplace expansion of (p+1)-minors along a new last column."""
    small = {c: i for i, c in enumerate(colex_subsets(r, p))}
    big = colex_subsets(r, p + 1)
    idx = np.zeros((len(big), p + 1), dtype=np.int64)
    row = np.zeros((len(big), p + 1), dtype=np.int64)
    sign = np.zeros((len(big), p + 1), dtype=np.int64)
    for j, J in enumerate(big):
        for pos in range(p + 1):
            idx[j, pos] = small[J[:pos] + J[pos + 1:]]
            row[j, pos] = J[pos]
            sign[j, pos] = -1 if (pos + p) % 2 else 1
    return idx, row, sign


def extend_wedges(w: np.ndarray, new_cols: np.ndarray, size: int, p_field: int) -> np.ndarray:
    """Wedge vectors of X ∪ {c} from those of X.

    ``w`` is N x C(r, size) for sets of ``size`` columns, ``new_cols`` is N x r.
    """
    r = new_cols.shape[1]
    idx, row, sign = _extension_tables(r, size)
    terms = w[:, idx] * new_cols[:, row] % p_field
    return (terms * sign).sum(axis=2) % p_field


def independent_rows(w: np.ndarray, p_field: int) -> list[int]:
    """Indices of a greedy (earliest-first) row basis of ``w`` over F_p."""
    if w.shape[0] == 0:
        return []
    _, pivots = row_reduce(w.T, p_field)
    return pivots


def _canonical(x) -> tuple:
    try:
        return tuple(sorted(x))
    except TypeError:
        return tuple(sorted(x, key=repr))


def representative_family(family: Iterable[Iterable[Hashable]], rep: MatroidRep) -> list[tuple]:
    """A (r - p)-representative subfamily of a family of independent p-sets.

    Members keep their input order; the result has at most C(r, p) sets.
    """
    fam = []
    seen = set()
    for x in family:
        key = _canonical(x)
        if key not in seen:
            seen.add(key)
            fam.append(key)
    if not fam:
        return []
    p = len(fam[0])
    if any(len(x) != p for x in fam):
        raise ValueError("all members must have the same size")
    if p > rep.rank:
        raise ValueError("members larger than the rank cannot be independent")
    w = np.array([minor_vector(rep.columns(x), rep.p) for x in fam], dtype=np.int64)
    if not w.any(axis=1).all():
        raise ValueError("family contains a dependent set")
    return [fam[i] for i in independent_rows(w, rep.p)]
