"""Chordality recognition with checkable certificates, split-graph recognition,
and the elimination game that defines fill for an ordering.

A graph is chordal when it has no induced cycle (hole) of length at least
four, equivalently when some elimination ordering produces zero fill (a
perfect elimination ordering, PEO).  Recognition runs maximum cardinality
search and tests the reversed visit order; the returned certificate, either
a PEO or a hole, is always revalidated against the bare definition before it
leaves this module, so correctness rests on the certificate checkers rather
than on the recognition path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _bits
from .errors import CounterexampleError, GraphInputError
from .graph import EdgePair, Graph


@dataclass(frozen=True)
class PeoCertificate:
    """Elimination ordering whose every vertex has a clique of later neighbors."""

    order: tuple[int, ...]
    kind = "peo"


@dataclass(frozen=True)
class HoleCertificate:
    """Induced cycle on >= 4 vertices, listed in cyclic order."""

    cycle: tuple[int, ...]
    kind = "hole"


Certificate = PeoCertificate | HoleCertificate


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, PeoCertificate):
        return {"kind": "peo", "order": list(cert.order)}
    return {"kind": "hole", "cycle": list(cert.cycle)}


def certificate_from_json(obj: dict) -> Certificate:
    if obj.get("kind") == "peo":
        return PeoCertificate(tuple(int(v) for v in obj["order"]))
    if obj.get("kind") == "hole":
        return HoleCertificate(tuple(int(v) for v in obj["cycle"]))
    raise GraphInputError(f"unknown certificate kind {obj.get('kind')!r}")


def _validate_permutation(n: int, order) -> np.ndarray:
    arr = np.asarray(list(order), dtype=np.int64)
    if arr.shape != (n,) or not np.array_equal(np.sort(arr), np.arange(n)):
        raise GraphInputError("ordering is not a permutation of the vertices")
    return arr


# -- maximum cardinality search ----------------------------------------------


def mcs_ordering(graph: Graph) -> np.ndarray:
    """Visit order of maximum cardinality search; ties break to the smallest id.

    The reversed visit order is a PEO exactly when the graph is chordal.
    """
    n = graph.n
    rows = graph.packed_rows()
    weight = np.zeros(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for i in range(n):
        v = int(np.argmax(weight))  # first maximum = smallest id
        order[i] = v
        idx = _bits.indices(rows[v], n)
        weight[idx] += 1
        weight[v] = -(n + 1)  # never re-selected
    return order


# -- certificate checkers (definitional, independent of recognition) ---------


def check_peo(graph: Graph, order) -> bool:
    """True iff order is a permutation and every vertex's later neighbors form a clique."""
    try:
        arr = _validate_permutation(graph.n, order)
    except GraphInputError:
        return False
    n = graph.n
    rows = graph.packed_rows()
    remaining = _bits.range_mask(n, 0, n)
    one = np.uint64(1)
    for v in arr:
        v = int(v)
        _bits.clear_bit(remaining, v)
        later = rows[v] & remaining
        idx = _bits.indices(later, n)
        if idx.size < 2:
            continue
        gaps = later[None, :] & ~rows[idx]
        gaps[np.arange(idx.size), idx >> 6] &= ~(one << (idx.astype(np.uint64) & np.uint64(63)))
        if gaps.any():
            return False
    return True


def check_hole(graph: Graph, cycle) -> bool:
    """True iff cycle is an induced cycle of length >= 4 in the graph."""
    cyc = [int(v) for v in cycle]
    k = len(cyc)
    if k < 4 or len(set(cyc)) != k:
        return False
    if any(not (0 <= v < graph.n) for v in cyc):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = graph.has_edge(cyc[i], cyc[j])
            consecutive = (j - i == 1) or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


# -- recognition --------------------------------------------------------------


def _first_peo_violation(graph: Graph, order: np.ndarray):
    """First (v, x, y) with x, y later neighbors of v and xy a non-edge, else None.

    Uses the earliest-later-neighbor subset test, which fails iff the order
    is not a PEO.
    """
    n = graph.n
    rows = graph.packed_rows()
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    remaining = _bits.range_mask(n, 0, n)
    for v in order:
        v = int(v)
        _bits.clear_bit(remaining, v)
        later = rows[v] & remaining
        idx = _bits.indices(later, n)
        if idx.size < 2:
            continue
        u = int(idx[np.argmin(pos[idx])])
        gap = later & ~rows[u]
        _bits.clear_bit(gap, u)
        missed = _bits.indices(gap, n)
        if missed.size:
            return v, u, int(missed[0])
    return None


def _chordless_path(graph: Graph, x: int, y: int, banned_mask: np.ndarray):
    """Shortest x-y path avoiding banned vertices; shortest implies induced."""
    n = graph.n
    rows = graph.packed_rows()
    allowed = ~banned_mask & _bits.range_mask(n, 0, n)
    _bits.set_bit(allowed, x)
    _bits.set_bit(allowed, y)
    parent = np.full(n, -1, dtype=np.int64)
    parent[x] = x
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in _bits.indices(rows[u] & allowed, n):
            w = int(w)
            if parent[w] == -1:
                parent[w] = u
                if w == y:
                    path = [y]
                    while path[-1] != x:
                        path.append(int(parent[path[-1]]))
                    return path[::-1]
                queue.append(w)
    return None


def _hole_through(graph: Graph, v: int, x: int, y: int):
    """Hole (v x .. y) from a nonadjacent pair x, y in N(v), if one exists."""
    n = graph.n
    banned = graph.packed_rows()[v].copy()
    _bits.set_bit(banned, v)
    path = _chordless_path(graph, x, y, banned)
    if path is None:
        return None
    return tuple([v] + path)


def find_hole(graph: Graph):
    """Some induced cycle of length >= 4, or None when the graph is chordal.

    Tries the MCS violation triple first; a full scan over nonadjacent
    neighbor pairs is a guaranteed fallback on non-chordal graphs.
    """
    order = mcs_ordering(graph)[::-1]
    viol = _first_peo_violation(graph, order)
    if viol is None:
        return None
    hole = _hole_through(graph, *viol)
    if hole is not None and check_hole(graph, hole):
        return hole
    for v in range(graph.n):
        nbrs = graph.neighbors(v)
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                x, y = int(nbrs[i]), int(nbrs[j])
                if graph.has_edge(x, y):
                    continue
                hole = _hole_through(graph, v, x, y)
                if hole is not None and check_hole(graph, hole):
                    return hole
    raise CounterexampleError("PEO test failed but no hole exists")


def is_chordal(graph: Graph) -> tuple[bool, Certificate]:
    """Decide chordality; the certificate is revalidated before being returned."""
    order = mcs_ordering(graph)[::-1]
    if _first_peo_violation(graph, order) is None:
        cert = PeoCertificate(tuple(int(v) for v in order))
        if not check_peo(graph, cert.order):
            raise CounterexampleError("recognition produced an invalid PEO")
        return True, cert
    hole = find_hole(graph)
    cert = HoleCertificate(hole)
    if not check_hole(graph, cert.cycle):
        raise CounterexampleError("recognition produced an invalid hole")
    return False, cert


# -- split graphs --------------------------------------------------------------


def is_split(graph: Graph):
    """Split recognition via the degree-sequence identity.

    Returns (True, (clique_vertices, independent_vertices)) or (False, None).
    The witnessing partition is verified before it is returned.
    """
    n = graph.n
    if n == 0:
        return True, ((), ())
    deg = graph.degrees()
    by_degree = sorted(range(n), key=lambda v: (-int(deg[v]), v))
    d = [int(deg[v]) for v in by_degree]
    k = max(i for i in range(1, n + 1) if d[i - 1] >= i - 1)
    lhs = sum(d[:k])
    rhs = k * (k - 1) + sum(min(di, k) for di in d[k:])
    if lhs != rhs:
        return False, None
    clique = tuple(sorted(by_degree[:k]))
    indep = tuple(sorted(by_degree[k:]))
    rows = graph.packed_rows()
    if clique:
        idx = np.asarray(clique, dtype=np.int64)
        want = _bits.mask_from_indices(n, idx)
        gaps = want[None, :] & ~rows[idx]
        gaps[np.arange(idx.size), idx >> 6] &= ~(
            np.uint64(1) << (idx.astype(np.uint64) & np.uint64(63))
        )
        if gaps.any():
            raise CounterexampleError("degree identity held but clique part is not a clique")
    if indep:
        idx = np.asarray(indep, dtype=np.int64)
        inside = _bits.mask_from_indices(n, idx)
        if (rows[idx] & inside[None, :]).any():
            raise CounterexampleError("degree identity held but independent part has an edge")
    return True, (clique, indep)


# -- elimination game ----------------------------------------------------------


def _eliminate_vertex(rows: np.ndarray, alive: np.ndarray, v: int, n: int) -> None:
    """Clique the still-alive neighborhood of v and retire v (in place)."""
    nbr = rows[v] & alive
    idx = _bits.indices(nbr, n)
    if idx.size >= 2:
        rows[idx] |= nbr
        _bits.clear_diagonal(rows, idx)
    _bits.clear_bit(alive, v)


def _collect_fill(original: np.ndarray, rows: np.ndarray, n: int) -> frozenset[EdgePair]:
    diff = rows & ~original
    out = []
    for u in range(n):
        later = _bits.indices(diff[u], n)
        out.extend((u, int(w)) for w in later[later > u])
    return frozenset(out)


def elimination_fill(graph: Graph, order) -> frozenset[EdgePair]:
    """Fill produced by eliminating vertices in the given order.

    At each step the missing edges among the current vertex's not-yet
    eliminated neighbors are added, then the vertex is removed; the union of
    all added pairs is returned.  Empty exactly when the order is a PEO.
    """
    arr = _validate_permutation(graph.n, order)
    n = graph.n
    original = graph.packed_rows()
    rows = original.copy()
    alive = _bits.range_mask(n, 0, n)
    for v in arr:
        _eliminate_vertex(rows, alive, int(v), n)
    return _collect_fill(original, rows, n)


# -- fill-in validation ---------------------------------------------------------


@dataclass(frozen=True)
class FillinCheck:
    """Outcome of verifying a claimed fill-in; falsy when the claim fails."""

    ok: bool
    reason: str | None = None  # 'invalid_pair' | 'pair_is_edge' | 'not_chordal'
    detail: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_fillin(graph: Graph, fillin) -> FillinCheck:
    """Check that every pair is a non-edge and that adding them yields a chordal graph.

    A pair that is already an edge is reported distinctly from a non-chordal
    result.
    """
    pairs = []
    for e in fillin:
        u, v = int(e[0]), int(e[1])
        if u == v or not (0 <= u < graph.n and 0 <= v < graph.n):
            return FillinCheck(False, "invalid_pair", (u, v))
        pairs.append((u, v) if u < v else (v, u))
    for p in pairs:
        if graph.has_edge(*p):
            return FillinCheck(False, "pair_is_edge", p)
    ok, cert = is_chordal(graph.add_edges(pairs))
    if not ok:
        return FillinCheck(False, "not_chordal", cert.cycle)
    return FillinCheck(True)
