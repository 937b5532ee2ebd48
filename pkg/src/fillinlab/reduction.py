"""Gadget constructions mapping vertex cover to minimum fill-in, with
certificate maps in both directions and verifiers for the proven bounds.

Both constructions attach a large clique U of new vertices to an input graph
G.  The primitive construction gives every original vertex its own block of
n^2 new vertices, non-adjacent to that vertex only; the colored construction
(for degree-bounded, clique-free inputs) gives every color class of a proper
coloring a block of b*n new vertices, non-adjacent to exactly the vertices
of that color.  Either way each original vertex misses exactly one block,
and the two endpoints of any edge miss different blocks.

That structure supports two certificate maps:

* ``split_completion`` turns a vertex cover C into a fill-in (complete
  C union U, leaving the rest independent, hence a split graph);
* ``full_vertices`` turns any fill-in back into a vertex cover (a vertex is
  "full" when all of its missing edges to U were added; a non-full endpoint
  pair on an edge would leave an induced 4-cycle).

Sizes then sandwich each other: tau(G)*deficit <= phi(H) <
(tau(G)+1)*deficit with deficit = n^2 for the primitive construction, which
``verify_sandwich`` and ``decision_equivalence_check`` audit on concrete
data.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _bits
from .chordal import is_chordal, is_split, verify_fillin
from .errors import CounterexampleError, GraphInputError, ResourceLimitError
from .graph import EdgePair, Graph, load_dimacs, save_dimacs
from .report import IneqRecord, RunReport, check, instance_descriptor
from .solvers import (
    CoverResult,
    exact_fillin_ordering_oracle,
    exact_vertex_cover,
    greedy_minfill_heuristic,
    is_vertex_cover,
    ORDERING_ORACLE_LIMIT,
)

PRIMITIVE_MAX_N = 40
COLORED_MAX_CELLS = 1_000_000


# -- coloring ---------------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """Proper coloring with an explicit palette size (classes may be empty)."""

    colors: tuple[int, ...]
    q: int
    used_fallback: bool = False  # greedy fallback may spend one extra color

    def monochromatic_edge(self, graph: Graph) -> EdgePair | None:
        for u, v in graph.iter_edges():
            if self.colors[u] == self.colors[v]:
                return (u, v)
        return None

    def validate(self, graph: Graph) -> None:
        if len(self.colors) != graph.n:
            raise GraphInputError("coloring length does not match vertex count")
        if any(not (0 <= c < self.q) for c in self.colors) and graph.n:
            raise GraphInputError("color id outside the declared palette")
        bad = self.monochromatic_edge(graph)
        if bad is not None:
            raise GraphInputError(f"coloring is improper: edge {bad} is monochromatic")


def _components(graph: Graph) -> list[list[int]]:
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in graph.neighbors(u):
                w = int(w)
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def find_forbidden_clique(graph: Graph, d: int) -> list[int] | None:
    """Some clique on d+1 vertices, if present (degrees must be <= d)."""
    for v in range(graph.n):
        if graph.degree(v) != d:
            continue
        closed = [v] + [int(w) for w in graph.neighbors(v)]
        if all(
            graph.has_edge(a, b) for i, a in enumerate(closed) for b in closed[i + 1 :]
        ):
            return sorted(closed)
    return None


def strip_clique_components(graph: Graph, d: int):
    """Remove K_{d+1} components, taking d vertices of each into a forced cover.

    Returns (stripped graph, kept original ids, forced cover original ids).
    """
    forced: list[int] = []
    kept: list[int] = []
    for comp in _components(graph):
        if len(comp) == d + 1 and all(
            graph.has_edge(a, b) for i, a in enumerate(comp) for b in comp[i + 1 :]
        ):
            forced.extend(comp[:d])
        else:
            kept.extend(comp)
    sub, mapping = graph.induced_subgraph(sorted(kept))
    return sub, mapping, forced


def _greedy_colors(graph: Graph, vertices, colors: list[int]) -> None:
    for v in vertices:
        used = {colors[int(w)] for w in graph.neighbors(v) if colors[int(w)] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c


def _distance_order(graph: Graph, comp: set[int], root: int) -> list[int]:
    """Vertices of comp by decreasing BFS distance from root (root last)."""
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in graph.neighbors(u):
            w = int(w)
            if w in comp and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    if len(dist) != len(comp):
        return []  # disconnected: caller falls back
    return sorted(comp, key=lambda v: (-dist[v], v))


def brooks_coloring(graph: Graph, d: int) -> Coloring:
    """Proper coloring with at most d colors for a d-degree-bounded graph
    without a clique on d+1 vertices.

    Non-regular components are colored greedily from the leaves of a BFS tree
    rooted at a low-degree vertex; regular components use the same-colored
    nonadjacent neighbor pair trick.  If the constructive case analysis ever
    fails, a plain greedy pass (at most d+1 colors) takes over and the result
    is flagged.
    """
    if d < 3:
        raise GraphInputError("degree bound d must be at least 3")
    degrees = graph.degrees()
    if graph.n and int(degrees.max()) > d:
        v = int(np.argmax(degrees))
        raise GraphInputError(f"vertex {v} has degree {int(degrees[v])} > d = {d}")
    clique = find_forbidden_clique(graph, d)
    if clique is not None:
        raise GraphInputError(
            f"clique on {d + 1} vertices {clique} present; "
            "strip clique components before coloring"
        )

    colors = [-1] * graph.n
    fallback = False
    for comp in _components(graph):
        comp_set = set(comp)
        degs = {v: graph.degree(v) for v in comp}
        if len(comp) <= d:
            _greedy_colors(graph, comp, colors)
            continue
        low = [v for v in comp if degs[v] < d]
        if low:
            order = _distance_order(graph, comp_set, low[0])
            _greedy_colors(graph, order, colors)
            continue
        # d-regular component: seed two nonadjacent neighbors of u with one color
        done = False
        for u in comp:
            nbrs = [int(w) for w in graph.neighbors(u)]
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    a, b = nbrs[i], nbrs[j]
                    if graph.has_edge(a, b):
                        continue
                    rest = comp_set - {a, b}
                    order = _distance_order(graph, rest, u)
                    if not order:
                        continue  # removing a, b disconnected the component
                    colors[a] = colors[b] = 0
                    _greedy_colors(graph, order, colors)
                    done = True
                    break
                if done:
                    break
            if done:
                break
        if not done:
            fallback = True
            _greedy_colors(graph, comp, colors)

    q = (max(colors) + 1) if colors else 0
    coloring = Coloring(tuple(colors), max(q, 0), used_fallback=fallback)
    coloring.validate(graph)
    if not fallback and q > d:
        raise CounterexampleError("constructive coloring exceeded d colors")
    if fallback and q > d + 1:
        raise CounterexampleError("greedy fallback exceeded d+1 colors")
    return coloring


# -- reduced instances ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ReducedInstance:
    """Gadget graph H plus the bookkeeping needed to map certificates back."""

    graph: Graph
    original: Graph
    kind: str  # 'primitive' | 'colored'
    blocks: tuple  # per original vertex (primitive) or per color (colored)
    b: int | None = None
    q: int | None = None
    coloring: Coloring | None = None

    @property
    def n_original(self) -> int:
        return self.original.n

    @property
    def block_deficit(self) -> int:
        """Missing edges from each original vertex to U."""
        n = self.n_original
        return n * n if self.kind == "primitive" else self.b * n

    @property
    def gadget_vertices(self) -> np.ndarray:
        return np.arange(self.n_original, self.graph.n)

    def missing_block(self, v: int) -> np.ndarray:
        """Gadget vertices not adjacent to original vertex v."""
        if self.kind == "primitive":
            return self.blocks[v]
        return self.blocks[self.coloring.colors[v]]

    def missing_pairs(self, v: int) -> list[EdgePair]:
        return [(v, int(u)) for u in self.missing_block(v)]

    def validate(self) -> None:
        """Structural self-check; failure means the construction is buggy."""
        n, N = self.n_original, self.graph.n
        rows = self.graph.packed_rows()
        expected_blocks = len(self.blocks)
        sizes = {len(blk) for blk in self.blocks}
        if sizes and sizes != {self.block_deficit}:
            raise CounterexampleError("block sizes differ from the deficit")
        ids = np.concatenate([np.asarray(b) for b in self.blocks]) if expected_blocks else np.array([], dtype=int)
        if sorted(ids.tolist()) != list(range(n, N)):
            raise CounterexampleError("blocks do not partition the gadget vertices")
        sub, _ = self.graph.induced_subgraph(range(n))
        if sub != self.original:
            raise CounterexampleError("gadget altered the original graph")
        u_mask = _bits.range_mask(N, n, N)
        for u in range(n, N):
            gap = u_mask & ~rows[u]
            _bits.clear_bit(gap, u)
            if gap.any():
                raise CounterexampleError("gadget vertices do not form a clique")
        for v in range(n):
            want = u_mask.copy()
            for u in self.missing_block(v):
                _bits.clear_bit(want, int(u))
            if ((rows[v] & u_mask) != want).any():
                raise CounterexampleError(
                    f"vertex {v} has the wrong gadget adjacency pattern"
                )
        for u, v in self.original.iter_edges():
            bu, bv = self.missing_block(u), self.missing_block(v)
            if int(bu[0]) == int(bv[0]):
                raise CounterexampleError(
                    f"edge ({u},{v}) endpoints miss the same block"
                )


def reduce_primitive(graph: Graph, max_n: int = PRIMITIVE_MAX_N) -> ReducedInstance:
    """Per-vertex gadget: n^2 new vertices per original vertex, U a clique.

    Produces a graph on n^3 + n vertices; memory grows with n^6, so inputs
    beyond ``max_n`` are refused.
    """
    n = graph.n
    if n < 1:
        raise GraphInputError("the construction needs at least one vertex")
    if n > max_n:
        raise ResourceLimitError(
            f"gadget on n^3+n = {n**3 + n} vertices refused (n = {n} > {max_n}); "
            "raise the limit explicitly to override"
        )
    N = n + n * n * n
    w = _bits.nwords(N)
    rows = np.zeros((N, w), dtype=np.uint64)
    g_rows = graph.packed_rows()
    rows[:n, : g_rows.shape[1]] = g_rows
    u_mask = _bits.range_mask(N, n, N)
    blocks = tuple(np.arange(n + v * n * n, n + (v + 1) * n * n) for v in range(n))
    orig_mask = _bits.range_mask(N, 0, n)
    for v in range(n):
        block_mask = _bits.range_mask(N, int(blocks[v][0]), int(blocks[v][-1]) + 1)
        rows[v] |= u_mask & ~block_mask
        block_row = (orig_mask & ~_bits.mask_from_indices(N, [v])) | u_mask
        rows[blocks[v]] = block_row
    _bits.clear_diagonal(rows, np.arange(n, N))
    inst = ReducedInstance(
        graph=Graph.from_packed_rows(rows, N),
        original=graph,
        kind="primitive",
        blocks=blocks,
    )
    inst.validate()
    return inst


def reduce_colored(
    graph: Graph, b: int, coloring: Coloring, max_cells: int = COLORED_MAX_CELLS
) -> ReducedInstance:
    """Per-color gadget: b*n new vertices per color class, U a clique.

    Produces a graph on (b*q + 1)*n vertices, linear in n for fixed b, q.
    """
    n = graph.n
    if n < 1:
        raise GraphInputError("the construction needs at least one vertex")
    if b < 1:
        raise GraphInputError("block scale b must be positive")
    coloring.validate(graph)
    q = coloring.q
    if b * q * n > max_cells:
        raise ResourceLimitError(
            f"colored gadget with b*q*n = {b * q * n} cells refused (limit {max_cells})"
        )
    bn = b * n
    N = n + q * bn
    w = _bits.nwords(N)
    rows = np.zeros((N, w), dtype=np.uint64)
    g_rows = graph.packed_rows()
    rows[:n, : g_rows.shape[1]] = g_rows
    u_mask = _bits.range_mask(N, n, N)
    blocks = tuple(np.arange(n + c * bn, n + (c + 1) * bn) for c in range(q))
    for c in range(q):
        block_mask = _bits.range_mask(N, n + c * bn, n + (c + 1) * bn)
        same_color = [v for v in range(n) if coloring.colors[v] == c]
        block_row = (
            _bits.range_mask(N, 0, n) & ~_bits.mask_from_indices(N, same_color)
        ) | u_mask
        rows[blocks[c]] = block_row
    # original rows: adjacent to every block of a different color
    for v in range(n):
        c = coloring.colors[v]
        block_mask = _bits.range_mask(N, n + c * bn, n + (c + 1) * bn)
        rows[v] |= u_mask & ~block_mask
    _bits.clear_diagonal(rows, np.arange(n, N))
    inst = ReducedInstance(
        graph=Graph.from_packed_rows(rows, N),
        original=graph,
        kind="colored",
        blocks=blocks,
        b=b,
        q=q,
        coloring=coloring,
    )
    inst.validate()
    return inst


# -- certificate maps -------------------------------------------------------------


def split_completion(inst: ReducedInstance, cover) -> frozenset[EdgePair]:
    """Fill-in built from a vertex cover: complete cover-union-gadget into a clique.

    Size is |C|*deficit + C(|C|,2) - |E(G[C])|; the completed graph is a
    split graph, hence chordal.
    """
    cover = sorted(set(int(v) for v in cover))
    n = inst.n_original
    if any(not (0 <= v < n) for v in cover):
        raise GraphInputError("cover contains a non-original vertex")
    if not is_vertex_cover(inst.original, cover):
        uncovered = next(
            (u, v)
            for u, v in inst.original.iter_edges()
            if u not in cover and v not in cover
        )
        raise GraphInputError(f"not a vertex cover: edge {uncovered} is uncovered")
    fill: set[EdgePair] = set()
    for v in cover:
        fill.update(inst.missing_pairs(v))
    fill.update(inst.original.non_edges_within(cover))
    inside = len(inst.original.non_edges_within(cover))
    expect = len(cover) * inst.block_deficit + inside
    if len(fill) != expect:
        raise CounterexampleError("split completion size bookkeeping is wrong")
    completed = inst.graph.add_edges(fill)
    if not is_split(completed)[0] or not is_chordal(completed)[0]:
        raise CounterexampleError("split completion did not produce a split graph")
    return frozenset(fill)


def full_vertices(
    inst: ReducedInstance, fillin, *, check_fillin: bool = True
) -> frozenset[int]:
    """Original vertices whose missing edges to U all lie in the fill-in.

    The returned set is re-verified to be a vertex cover of the original
    graph; failure of that check is a hard internal error, not an input
    error.
    """
    if check_fillin:
        res = verify_fillin(inst.graph, fillin)
        if not res:
            raise GraphInputError(f"invalid fill-in: {res.reason} {res.detail}")
    pairs = {(min(int(a), int(b)), max(int(a), int(b))) for a, b in fillin}
    full = frozenset(
        v
        for v in range(inst.n_original)
        if all(p in pairs for p in inst.missing_pairs(v))
    )
    if not is_vertex_cover(inst.original, full):
        raise CounterexampleError(
            "full-vertex extraction produced a non-cover from a valid fill-in"
        )
    return full


# -- verification harnesses ---------------------------------------------------------


def _exact_cover(graph: Graph) -> CoverResult:
    res = exact_vertex_cover(graph)
    return res


def produced_fillins(inst: ReducedInstance, rng=None, random_orderings: int = 0):
    """Named fill-ins from every in-repo producer, for audit sweeps."""
    from .chordal import elimination_fill

    out = {
        "min-degree": greedy_minfill_heuristic(inst.graph, "min-degree"),
        "min-fill": greedy_minfill_heuristic(inst.graph, "min-fill"),
    }
    if rng is not None:
        for i in range(random_orderings):
            order = rng.permutation(inst.graph.n)
            out[f"random-order-{i}"] = elimination_fill(inst.graph, order)
    return out


def verify_sandwich(
    graph: Graph,
    inst: ReducedInstance | None = None,
    extra_fillins: dict | None = None,
    rng=None,
    random_orderings: int = 2,
) -> RunReport:
    """Audit the cover-to-fill-in size window on one primitive instance.

    Checks (i) the constructive upper bound, (ii) the accounting lower bound
    for every produced fill-in, and (iii) the exact window against the
    ordering oracle whenever the gadget is small enough for it.
    """
    if inst is None:
        inst = reduce_primitive(graph)
    if inst.kind != "primitive":
        raise GraphInputError("the sandwich window applies to primitive instances")
    n = graph.n
    deficit = inst.block_deficit
    report = RunReport(
        command="verify-sandwich", instance=instance_descriptor(graph)
    )
    cover_res = _exact_cover(graph)
    report.outputs["cover_solver_status"] = cover_res.status
    if not cover_res.optimal:
        report.add(
            IneqRecord("exact_cover_available", 0, 1, "==", False, "solver exhausted")
        )
        return report
    tau = cover_res.size
    report.outputs["tau"] = tau
    constructed = split_completion(inst, cover_res.vertices)
    report.outputs["constructive_upper_bound"] = len(constructed)
    report.add(
        check("constructed_fillin_below_window", len(constructed), (tau + 1) * deficit, "<")
    )
    fills = dict(extra_fillins or {})
    fills.update(produced_fillins(inst, rng=rng, random_orderings=random_orderings))
    fills["split-completion"] = constructed
    for name, fill in sorted(fills.items()):
        full = full_vertices(inst, fill)
        report.add(
            check(f"accounting[{name}]", len(full) * deficit, len(fill), "<=")
        )
        report.add(check(f"full_set_covers[{name}]", tau, len(full), "<="))
        report.add(check(f"window_lower[{name}]", tau * deficit, len(fill), "<="))
    if inst.graph.n <= ORDERING_ORACLE_LIMIT:
        phi = len(exact_fillin_ordering_oracle(inst.graph))
        report.outputs["phi_gadget"] = phi
        report.add(check("oracle_window_lower", tau * deficit, phi, "<="))
        report.add(check("oracle_window_upper", phi, (tau + 1) * deficit, "<"))
    return report


def decision_equivalence_check(
    graph: Graph,
    c: int,
    fillin=None,
    inst: ReducedInstance | None = None,
) -> RunReport:
    """Audit the decision-level equivalence at threshold c on one instance.

    A cover of size at most c exists iff the gadget admits a fill-in of size
    at most (c+1)n^2 - 1.  The 'if' direction is checked constructively; the
    'only if' direction is checked on the supplied fill-in: when its size is
    within the bound, the extracted full-vertex set must be a cover of size
    at most c.
    """
    if inst is None:
        inst = reduce_primitive(graph)
    n = graph.n
    bound = (c + 1) * n * n - 1
    report = RunReport(
        command="verify-decision-equivalence",
        instance=instance_descriptor(graph),
        params={"c": c, "bound": bound},
    )
    cover_res = _exact_cover(graph)
    if not cover_res.optimal:
        report.add(
            IneqRecord("exact_cover_available", 0, 1, "==", False, "solver exhausted")
        )
        return report
    tau = cover_res.size
    report.outputs["tau"] = tau
    if tau <= c:
        constructed = split_completion(inst, cover_res.vertices)
        report.add(check("constructive_within_bound", len(constructed), bound, "<="))
    if fillin is not None:
        res = verify_fillin(inst.graph, fillin)
        if not res:
            raise GraphInputError(f"invalid fill-in: {res.reason} {res.detail}")
        size = len(set(map(tuple, fillin)))
        report.outputs["fillin_size"] = size
        if size <= bound:
            full = full_vertices(inst, fillin, check_fillin=False)
            rec = check("extracted_cover_at_most_c", len(full), c, "<=")
            report.add(rec)
            if not rec.passed:
                raise CounterexampleError(
                    "fill-in within the bound extracted a cover larger than c"
                )
        else:
            report.add(check("fillin_exceeds_bound", bound, size, "<"))
        if tau > c:
            rec = check("no_small_fillin_when_tau_exceeds_c", bound, size, "<")
            report.add(rec)
            if not rec.passed:
                raise CounterexampleError(
                    "found a fill-in within the bound although tau exceeds c"
                )
    return report


# -- serialization --------------------------------------------------------------------


def save_instance(inst: ReducedInstance, dimacs_path, sidecar_path=None) -> str:
    """Write the gadget as DIMACS plus a JSON sidecar with the bookkeeping."""
    if sidecar_path is None:
        sidecar_path = str(dimacs_path) + ".json"
    save_dimacs(inst.graph, dimacs_path)
    sidecar = {
        "reduction": inst.kind,
        "n": inst.n_original,
        "b": inst.b,
        "q": inst.q,
        "blocks": [[int(u) for u in blk] for blk in inst.blocks],
        "coloring": list(inst.coloring.colors) if inst.coloring else None,
    }
    with open(sidecar_path, "w") as fh:
        json.dump(sidecar, fh, indent=2)
        fh.write("\n")
    return str(sidecar_path)


def load_instance(dimacs_path, sidecar_path=None) -> ReducedInstance:
    if sidecar_path is None:
        sidecar_path = str(dimacs_path) + ".json"
    H = load_dimacs(dimacs_path)
    with open(sidecar_path) as fh:
        side = json.load(fh)
    n = int(side["n"])
    original, _ = H.induced_subgraph(range(n))
    coloring = None
    if side.get("coloring") is not None:
        coloring = Coloring(tuple(int(c) for c in side["coloring"]), int(side["q"]))
    inst = ReducedInstance(
        graph=H,
        original=original,
        kind=side["reduction"],
        blocks=tuple(np.asarray(blk, dtype=np.int64) for blk in side["blocks"]),
        b=side.get("b"),
        q=side.get("q"),
        coloring=coloring,
    )
    inst.validate()
    return inst
