"""Independent brute-force oracles used to cross-check the package.

Everything here works on plain Python sets of edge pairs, deliberately
sharing no algorithmic code with the package: holes are found by subset
enumeration, covers by subset enumeration, minimum fill by trying every
elimination ordering with a dict-of-sets elimination game.
"""

from itertools import combinations, permutations


def edge_set(graph):
    return {tuple(e) for e in graph.edge_list()}


def find_holes_brute(n, edges):
    """All induced cycles of length >= 4, as vertex subsets (ordered tuples)."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    holes = []
    for size in range(4, n + 1):
        for subset in combinations(range(n), size):
            sub = set(subset)
            degs = [len(adj[v] & sub) for v in subset]
            if any(d != 2 for d in degs):
                continue
            # connected 2-regular induced subgraph on |sub| vertices = induced cycle
            start = subset[0]
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in adj[u] & sub:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                holes.append(subset)
    return holes


def is_chordal_brute(n, edges):
    return not find_holes_brute(n, edges)


def is_split_brute(n, edges):
    """No induced 2K2, C4, or C5."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def induced_edges(subset):
        return {(a, b) for a, b in combinations(subset, 2) if b in adj[a]}

    for subset in combinations(range(n), 4):
        e = induced_edges(subset)
        if len(e) == 2 and not (set(e.pop()) & set(e.pop())):
            return False  # 2K2
    for hole in find_holes_brute(n, edges):
        if len(hole) in (4, 5):
            return False
    return True


def min_vertex_cover_brute(n, edges):
    """Smallest cover size by subset enumeration."""
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            s = set(subset)
            if all(u in s or v in s for u, v in edges):
                return k
    return n


def elimination_fill_brute(n, edges, order):
    """Dict-of-sets elimination game; returns the set of added pairs."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    fill = set()
    remaining = set(range(n))
    for v in order:
        nbrs = sorted(adj[v] & remaining)
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                a, b = nbrs[i], nbrs[j]
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    fill.add((a, b))
        remaining.discard(v)
    return fill


def min_fill_brute(n, edges):
    """Minimum fill size over every elimination ordering (n <= 8 or so)."""
    best = None
    for order in permutations(range(n)):
        size = len(elimination_fill_brute(n, edges, order))
        if best is None or size < best:
            best = size
            if best == 0:
                break
    return best


def all_labeled_graphs(n):
    """Yield the edge set of every labeled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield {pairs[i] for i in range(len(pairs)) if mask >> i & 1}


def iso_classes_4():
    """One labeled representative per isomorphism class of 4-vertex graphs."""
    reps = []
    seen = set()
    for edges in all_labeled_graphs(4):
        canon = min(
            tuple(
                sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges)
            )
            for p in permutations(range(4))
        )
        if canon not in seen:
            seen.add(canon)
            reps.append(edges)
    return reps
