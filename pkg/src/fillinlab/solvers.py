"""Desk-scale exact solvers and greedy heuristics.

These are the ground-truth generators for the whole repository: a
branch-and-bound minimum vertex cover, an exact minimum fill-in oracle that
searches elimination orderings with memoization on the set of already
eliminated vertices, a hole-chord branching fill-in solver for slightly
larger instances with a small optimum, and the classic min-degree / min-fill
elimination heuristics.

Every solver revalidates its certificate before returning; budget exhaustion
is always an explicit outcome, never a silently wrong answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _bits
from .chordal import _collect_fill, _eliminate_vertex, elimination_fill, find_hole
from .errors import CounterexampleError, GraphInputError, ResourceLimitError
from .graph import EdgePair, Graph

ORDERING_ORACLE_LIMIT = 10

GREEDY_STRATEGIES = ("min-degree", "min-fill")


class _BudgetExceeded(Exception):
    pass


# -- vertex cover ---------------------------------------------------------------


@dataclass(frozen=True)
class CoverResult:
    """Outcome of the exact vertex cover search."""

    vertices: frozenset[int]
    optimal: bool
    nodes: int
    seconds: float

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def status(self) -> str:
        return "optimal" if self.optimal else "budget_exhausted"


def is_vertex_cover(graph: Graph, vertices) -> bool:
    """Every edge has at least one end in the set."""
    cover = set(int(v) for v in vertices)
    return all(u in cover or v in cover for u, v in graph.iter_edges())


def exact_vertex_cover(graph: Graph, node_budget: int = 5_000_000) -> CoverResult:
    """Minimum vertex cover by branch and bound on the maximum-degree vertex.

    Degree-0 and degree-1 vertices are simplified away; a greedy matching
    supplies the lower bound.  Exceeding the node budget yields an explicit
    non-optimal result carrying the best cover found (still a valid cover).
    """
    t0 = time.perf_counter()
    n = graph.n
    adj = [0] * n
    for u, v in graph.iter_edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1

    best_size = n + 1
    best_set: list[int] = []
    nodes = 0

    def matching_bound(alive: int) -> int:
        used = 0
        size = 0
        rem = alive
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            if used >> v & 1:
                continue
            nb = adj[v] & alive & ~used
            if nb:
                u = (nb & -nb).bit_length() - 1
                used |= (1 << v) | (1 << u)
                size += 1
        return size

    def search(alive: int, chosen: list[int]):
        nonlocal best_size, best_set, nodes
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExceeded
        base = len(chosen)
        try:
            # simplification: drop isolated vertices, force neighbors of leaves
            while True:
                changed = False
                rem = alive
                while rem:
                    v = (rem & -rem).bit_length() - 1
                    rem &= rem - 1
                    nb = adj[v] & alive
                    if nb == 0:
                        alive &= ~(1 << v)
                    elif nb & (nb - 1) == 0:  # degree 1: take the neighbor
                        u = nb.bit_length() - 1
                        chosen.append(u)
                        alive &= ~((1 << v) | (1 << u))
                        changed = True
                        break
                if not changed:
                    break
            if not any(adj[v] & alive for v in _iter_bits(alive)):
                if len(chosen) < best_size:
                    best_size = len(chosen)
                    best_set = list(chosen)
                return
            if len(chosen) + matching_bound(alive) >= best_size:
                return
            v = max(_iter_bits(alive), key=lambda w: ((adj[w] & alive).bit_count(), -w))
            nb = list(_iter_bits(adj[v] & alive))
            # branch 1: v joins the cover
            chosen.append(v)
            search(alive & ~(1 << v), chosen)
            chosen.pop()
            # branch 2: v stays out, so all its neighbors join
            chosen.extend(nb)
            mask = 1 << v
            for u in nb:
                mask |= 1 << u
            search(alive & ~mask, chosen)
        finally:
            del chosen[base:]

    optimal = True
    try:
        search(full, [])
    except _BudgetExceeded:
        optimal = False
        if best_size > n:
            best_set = list(range(n))  # trivial fallback cover
    result = CoverResult(
        vertices=frozenset(best_set),
        optimal=optimal,
        nodes=nodes,
        seconds=time.perf_counter() - t0,
    )
    if not is_vertex_cover(graph, result.vertices):
        raise CounterexampleError("vertex cover solver returned a non-cover")
    return result


def _iter_bits(mask: int):
    while mask:
        v = (mask & -mask).bit_length() - 1
        yield v
        mask &= mask - 1


# -- exact fill-in: ordering oracle ---------------------------------------------


def exact_fillin_ordering_oracle(graph: Graph) -> frozenset[EdgePair]:
    """Minimum fill-in as the best elimination ordering, exhaustively.

    Orderings with equal elimination prefixes reach the same partially
    eliminated graph, so the search memoizes on the set of eliminated
    vertices.  Hard-limited to graphs on at most ORDERING_ORACLE_LIMIT
    vertices.
    """
    n = graph.n
    if n > ORDERING_ORACLE_LIMIT:
        raise ResourceLimitError(
            f"ordering oracle is limited to {ORDERING_ORACLE_LIMIT} vertices, got {n}"
        )
    base = [0] * n
    for u, v in graph.iter_edges():
        base[u] |= 1 << v
        base[v] |= 1 << u
    full = (1 << n) - 1
    memo: dict[int, tuple[int, int]] = {}  # eliminated set -> (fill cost, best vertex)

    def deficiency(adj: list[int], v: int) -> int:
        nb = adj[v]
        missing = 0
        rem = nb
        while rem:
            u = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            missing += (nb & ~adj[u] & ~(1 << u) & ~((1 << (u + 1)) - 1)).bit_count()
        return missing

    def eliminate(adj: list[int], v: int) -> list[int]:
        nb = adj[v]
        out = list(adj)
        rem = nb
        while rem:
            u = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            out[u] = (out[u] | (nb & ~(1 << u))) & ~(1 << v)
        out[v] = 0
        return out

    def solve(done: int, adj: list[int]) -> int:
        if done == full:
            return 0
        hit = memo.get(done)
        if hit is not None:
            return hit[0]
        best_cost, best_v = None, -1
        rem = full & ~done
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            cost = deficiency(adj, v) + solve(done | (1 << v), eliminate(adj, v))
            if best_cost is None or cost < best_cost:
                best_cost, best_v = cost, v
        memo[done] = (best_cost, best_v)
        return best_cost

    if n == 0:
        return frozenset()
    optimum = solve(0, base)
    order = []
    done, adj = 0, base
    while done != full:
        v = memo[done][1]
        order.append(v)
        adj = eliminate(adj, v)
        done |= 1 << v
    fill = elimination_fill(graph, order)
    if len(fill) != optimum:
        raise CounterexampleError("oracle reconstruction does not match its optimum")
    return fill


# -- exact fill-in: hole-chord branching ------------------------------------------


@dataclass(frozen=True)
class BranchFillinResult:
    """Outcome of the budgeted branching fill-in search."""

    status: str  # 'found' | 'none_within_budget' | 'exhausted'
    fillin: frozenset[EdgePair] | None
    nodes: int
    seconds: float


def exact_fillin_branch(
    graph: Graph, budget: int, node_budget: int = 200_000
) -> BranchFillinResult:
    """Minimum fill-in of size at most ``budget``, by branching on hole chords.

    Any fill-in must contain a chord of every hole, so branching over the
    l(l-3)/2 chords of one hole is exhaustive; depth is capped by the budget.
    'none_within_budget' is definitive; 'exhausted' means the node budget ran
    out first.
    """
    t0 = time.perf_counter()
    nodes = 0
    best: list[EdgePair] | None = None

    def search(g: Graph, added: list[EdgePair], remaining: int):
        nonlocal nodes, best
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExceeded
        if best is not None and len(added) >= len(best):
            return
        hole = find_hole(g)
        if hole is None:
            best = list(added)
            return
        if remaining == 0:
            return
        k = len(hole)
        chords = []
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                u, v = hole[i], hole[j]
                chords.append((u, v) if u < v else (v, u))
        for chord in sorted(chords):
            added.append(chord)
            search(g.add_edges([chord]), added, remaining - 1)
            added.pop()

    try:
        search(graph, [], budget)
        status = "found" if best is not None else "none_within_budget"
    except _BudgetExceeded:
        status = "found" if best is not None else "exhausted"
    seconds = time.perf_counter() - t0
    if best is None:
        return BranchFillinResult(status, None, nodes, seconds)
    return BranchFillinResult(status, frozenset(best), nodes, seconds)


# -- greedy elimination heuristics -------------------------------------------------


def _greedy_game(graph: Graph, strategy: str):
    """Run the elimination game under a greedy vertex choice; ties pick the smallest id."""
    if strategy not in GREEDY_STRATEGIES:
        raise GraphInputError(
            f"unknown strategy {strategy!r}; expected one of {GREEDY_STRATEGIES}"
        )
    n = graph.n
    original = graph.packed_rows()
    rows = original.copy()
    alive = _bits.range_mask(n, 0, n)
    alive_bool = np.ones(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    for step in range(n):
        live = np.nonzero(alive_bool)[0]
        if strategy == "min-degree":
            deg = _bits.popcount_rows(rows[live] & alive)
            v = int(live[np.argmin(deg)])
        else:
            sub = _bits.unpack(rows[live] & alive, n)[:, live]
            deg = sub.sum(axis=1, dtype=np.int64)
            f = sub.astype(np.float32)
            common = ((f @ f) * f).sum(axis=1, dtype=np.float64)
            fill_count = deg * (deg - 1) // 2 - (common / 2).astype(np.int64)
            v = int(live[np.argmin(fill_count)])
        order[step] = v
        _eliminate_vertex(rows, alive, v, n)
        alive_bool[v] = False
    return order, _collect_fill(original, rows, n)


def greedy_ordering(graph: Graph, strategy: str) -> np.ndarray:
    """Elimination ordering chosen by the named greedy strategy."""
    return _greedy_game(graph, strategy)[0]


def greedy_minfill_heuristic(graph: Graph, strategy: str) -> frozenset[EdgePair]:
    """Fill-in produced by the greedy elimination game.

    'min-degree' picks the vertex of least current degree; 'min-fill' picks
    the vertex whose elimination adds the fewest edges right now.  The result
    is always a valid fill-in.
    """
    return _greedy_game(graph, strategy)[1]
