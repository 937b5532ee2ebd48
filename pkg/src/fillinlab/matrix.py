"""Bridge between sparse symmetric matrix patterns and the graph machinery.

Only structure is modeled: a pattern is the set of strict upper-triangle
positions of an n-by-n symmetric matrix, with the diagonal assumed
structurally nonzero.  Symbolic factorization simulates Gaussian elimination
on a boolean matrix under a pivot ordering-- deliberately a separate
implementation from the graph elimination game, so the two can cross-check
each other position for position.  Numerical cancellation is ignored
throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .chordal import elimination_fill
from .errors import GraphInputError
from .graph import Graph

Position = tuple[int, int]


@dataclass(frozen=True)
class SparsePattern:
    """Strict upper-triangle positions of a symmetric matrix; no diagonal stored."""

    n: int
    positions: frozenset[Position]

    def __post_init__(self):
        for i, j in self.positions:
            if not (0 <= i < j < self.n):
                raise GraphInputError(f"position ({i},{j}) is not strict upper triangle")

    @property
    def nnz_offdiag(self) -> int:
        return len(self.positions)

    @classmethod
    def from_entries(cls, n: int, entries, values=None) -> "SparsePattern":
        """Build from (row, col) pairs in any order; diagonal entries are dropped.

        ``values`` may supply the numeric value per entry; an explicit zero on
        the diagonal triggers a warning and is still treated as structurally
        nonzero.
        """
        pos = set()
        for k, (i, j) in enumerate(entries):
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphInputError(f"entry ({i},{j}) out of range for n = {n}")
            if i == j:
                if values is not None and values[k] == 0:
                    warnings.warn(
                        f"explicit zero diagonal at {i}; treated as structurally nonzero",
                        stacklevel=2,
                    )
                continue
            pos.add((i, j) if i < j else (j, i))
        return cls(n, frozenset(pos))


def graph_from_pattern(pattern: SparsePattern) -> Graph:
    """One vertex per row, one edge per stored off-diagonal position."""
    return Graph.build(pattern.n, pattern.positions)


def pattern_from_graph(graph: Graph) -> SparsePattern:
    return SparsePattern(graph.n, graph.edge_set())


def tridiagonal_pattern(n: int) -> SparsePattern:
    return SparsePattern(n, frozenset((i, i + 1) for i in range(n - 1)))


def arrow_pattern(n: int) -> SparsePattern:
    """Dense first row and column, otherwise diagonal only."""
    return SparsePattern(n, frozenset((0, j) for j in range(1, n)))


def symbolic_factor(pattern: SparsePattern, ordering) -> tuple[frozenset[Position], int]:
    """Simulate symmetric Gaussian elimination under the pivot ordering.

    Returns (fill positions, total nonzeros of the factorized pattern).  Fill
    positions are reported in original row ids, strict upper triangle; the
    total counts both symmetric off-diagonal copies plus the n diagonal
    entries.
    """
    n = pattern.n
    order = np.asarray(list(ordering), dtype=np.int64)
    if order.shape != (n,) or not np.array_equal(np.sort(order), np.arange(n)):
        raise GraphInputError("ordering is not a permutation of 0..n-1")
    step = np.empty(n, dtype=np.int64)
    step[order] = np.arange(n)
    B = np.zeros((n, n), dtype=bool)
    for i, j in pattern.positions:
        B[step[i], step[j]] = True
        B[step[j], step[i]] = True
    initial = B.copy()
    for k in range(n):
        idx = np.nonzero(B[k, k + 1 :])[0] + k + 1
        if idx.size >= 2:
            B[np.ix_(idx, idx)] = True
            B[idx, idx] = False
    fill = set()
    added = B & ~initial
    for a, b in zip(*np.nonzero(np.triu(added, 1))):
        i, j = int(order[a]), int(order[b])
        fill.add((i, j) if i < j else (j, i))
    upper_total = int(np.triu(B, 1).sum())
    return frozenset(fill), 2 * upper_total + n


def fill_equivalence_check(pattern: SparsePattern, ordering) -> bool:
    """Matrix-side and graph-side fill agree position for position.

    The two sides are independent implementations; disagreement is treated
    as a hard failure by the verification suites.
    """
    matrix_fill, _ = symbolic_factor(pattern, ordering)
    graph_fill = elimination_fill(graph_from_pattern(pattern), ordering)
    return matrix_fill == graph_fill


# -- Matrix Market coordinate I/O ------------------------------------------------

_FIELDS = ("real", "integer", "complex", "pattern")


def load_matrix_market(path) -> SparsePattern:
    """Parse a coordinate Matrix Market file; the symmetric qualifier is required.

    The field (real/integer/complex/pattern) is validated and otherwise
    ignored; indices are 1-based on disk.
    """
    with open(path) as fh:
        header = fh.readline().strip()
        parts = header.split()
        if len(parts) != 5 or parts[0] != "%%MatrixMarket":
            raise GraphInputError(f"{path}: missing %%MatrixMarket header")
        _, obj, fmt, field, symmetry = (p.lower() for p in parts)
        if obj != "matrix" or fmt != "coordinate":
            raise GraphInputError(f"{path}: only 'matrix coordinate' files are supported")
        if field not in _FIELDS:
            raise GraphInputError(f"{path}: unknown field {field!r}")
        if symmetry != "symmetric":
            raise GraphInputError(f"{path}: symmetry must be 'symmetric', got {symmetry!r}")
        size_line = None
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            size_line = line
            break
        if size_line is None:
            raise GraphInputError(f"{path}: missing size line")
        dims = size_line.split()
        if len(dims) != 3:
            raise GraphInputError(f"{path}: size line must be '<rows> <cols> <nnz>'")
        rows, cols, nnz = (int(x) for x in dims)
        if rows != cols:
            raise GraphInputError(f"{path}: pattern must be square, got {rows}x{cols}")
        entries = []
        vals = []
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            toks = line.split()
            i, j = int(toks[0]) - 1, int(toks[1]) - 1
            entries.append((i, j))
            if field == "pattern":
                vals.append(1.0)
            elif field == "complex":
                vals.append(abs(complex(float(toks[2]), float(toks[3]))))
            else:
                vals.append(float(toks[2]))
        if len(entries) != nnz:
            raise GraphInputError(
                f"{path}: header declares {nnz} entries, found {len(entries)}"
            )
    return SparsePattern.from_entries(rows, entries, vals)


def save_matrix_market(pattern: SparsePattern, path, comments=()) -> None:
    """Write the pattern as 'matrix coordinate pattern symmetric', lower triangle."""
    lower = sorted((j, i) for i, j in pattern.positions)
    with open(path, "w") as fh:
        fh.write("%%MatrixMarket matrix coordinate pattern symmetric\n")
        for c in comments:
            fh.write(f"% {c}\n")
        fh.write(f"{pattern.n} {pattern.n} {len(lower)}\n")
        for i, j in lower:
            fh.write(f"{i + 1} {j + 1}\n")
