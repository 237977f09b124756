"""Immutable simple undirected graphs on vertices 0..n-1.

Adjacency is kept in CSR form (int64 indptr/indices with sorted neighbor
lists) so the kernels can consume it directly; per-vertex frozensets are
materialized lazily. Construction goes through build_graph, which
canonicalizes, deduplicates and validates edges.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GraphError


class Graph:
    __slots__ = ("n", "m", "indptr", "indices", "_adjsets", "_masks")

    def __init__(self, n, indptr, indices):
        # internal: callers use build_graph, which guarantees the invariants
        self.n = int(n)
        self.m = int(len(indices) // 2)
        self.indptr = indptr
        self.indices = indices
        self._adjsets = None
        self._masks = None

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self):
        return np.diff(self.indptr)

    def neighbors(self, v):
        """Sorted neighbor ids of v, as an array view."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def adj(self):
        """Tuple of per-vertex neighbor frozensets (built on first use)."""
        if self._adjsets is None:
            lists = np.split(self.indices, self.indptr[1:-1]) if self.n else []
            self._adjsets = tuple(frozenset(int(u) for u in l) for l in lists)
        return self._adjsets

    def adjacency_masks(self):
        """Per-vertex neighbor bitmasks (Python ints), cached."""
        if self._masks is None:
            masks = [0] * self.n
            for v in range(self.n):
                mv = 0
                for u in self.neighbors(v):
                    mv |= 1 << int(u)
                masks[v] = mv
            self._masks = masks
        return self._masks

    def has_edge(self, u, v):
        if u == v:
            return False
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return bool(k < len(row) and row[k] == v)

    def edge_array(self):
        """All edges as an (m, 2) int64 array with u < v, lexicographic."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        keep = src < self.indices
        return np.column_stack((src[keep], self.indices[keep]))

    def edges(self):
        """Iterate edges as (u, v) int tuples with u < v."""
        for u, v in self.edge_array():
            yield int(u), int(v)

    def induced(self, subset):
        """Subgraph induced on subset.

        Returns (graph, kept) where kept is the sorted list of original ids;
        new vertex i corresponds to kept[i].
        """
        kept = sorted(int(v) for v in set(subset))
        if kept and (kept[0] < 0 or kept[-1] >= self.n):
            raise GraphError(f"subset contains vertex outside 0..{self.n - 1}")
        remap = -np.ones(self.n, dtype=np.int64)
        remap[kept] = np.arange(len(kept), dtype=np.int64)
        ea = self.edge_array()
        if len(ea):
            mask = (remap[ea[:, 0]] >= 0) & (remap[ea[:, 1]] >= 0)
            ea = remap[ea[mask]]
        return build_graph(len(kept), ea), kept

    def complement(self):
        edges = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                 if not self.has_edge(u, v)]
        return build_graph(self.n, edges)

    def validate(self):
        """Re-check structural invariants; raises GraphError on violation."""
        if self.n < 0:
            raise GraphError("negative vertex count")
        if len(self.indptr) != self.n + 1 or self.indptr[0] != 0:
            raise GraphError("bad indptr")
        if self.n and not np.all(np.diff(self.indptr) >= 0):
            raise GraphError("indptr not monotone")
        if len(self.indices) != 2 * self.m:
            raise GraphError("degree sum != 2m")
        for v in range(self.n):
            row = self.neighbors(v)
            if len(row) and (row.min() < 0 or row.max() >= self.n):
                raise GraphError("neighbor id out of range")
            if np.any(row == v):
                raise GraphError(f"self-loop at {v}")
            if len(row) > 1 and np.any(np.diff(row) <= 0):
                raise GraphError(f"neighbor row of {v} not strictly sorted")
            for u in row:
                if not self.has_edge(int(u), v):
                    raise GraphError(f"asymmetric edge ({v}, {u})")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.indptr, other.indptr))

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n, edges):
    """Construct a Graph from an edge collection.

    Accepts any iterable of (u, v) pairs or an integer array of shape (k, 2).
    Edges are canonicalized to u < v and deduplicated; self-loops and
    out-of-range ids raise GraphError naming the offending pair.
    """
    n = int(n)
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    if isinstance(edges, np.ndarray):
        arr = edges.astype(np.int64, copy=False).reshape(-1, 2)
    else:
        pairs = [(int(u), int(v)) for u, v in edges]
        arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    if len(arr):
        bad = (arr < 0) | (arr >= n)
        if bad.any():
            u, v = arr[bad.any(axis=1)][0]
            raise GraphError(f"vertex id out of range in edge ({u}, {v})")
        loops = arr[:, 0] == arr[:, 1]
        if loops.any():
            u = arr[loops][0][0]
            raise GraphError(f"self-loop ({u}, {u})")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        arr = np.unique(np.column_stack((lo, hi)), axis=0)
    src = np.concatenate((arr[:, 0], arr[:, 1])) if len(arr) else np.empty(0, np.int64)
    dst = np.concatenate((arr[:, 1], arr[:, 0])) if len(arr) else np.empty(0, np.int64)
    order = np.lexsort((dst, src))
    indices = dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    if len(src):
        counts = np.bincount(src, minlength=n)
        indptr[1:] = np.cumsum(counts)
    return Graph(n, indptr, indices)


def degree_sum(graph, subset):
    """Sum of degrees (in the whole graph) over the given vertex subset."""
    total = 0
    seen = set()
    for v in subset:
        v = int(v)
        if v < 0 or v >= graph.n:
            raise GraphError(f"vertex {v} outside 0..{graph.n - 1}")
        if v not in seen:
            seen.add(v)
            total += graph.degree(v)
    return total


def average_degree(graph):
    """2m/n as an exact Fraction; undefined on the empty vertex set."""
    if graph.n < 1:
        raise GraphError("average degree needs at least one vertex")
    return Fraction(2 * graph.m, graph.n)


@dataclass(frozen=True)
class Bipartition:
    """A 2-sides split of a vertex set. Sides are disjoint; their union is
    checked against a graph by validate()."""

    side_a: frozenset
    side_b: frozenset

    def validate(self, graph, require_bipartite=False):
        if self.side_a & self.side_b:
            raise GraphError("bipartition sides overlap")
        union = self.side_a | self.side_b
        if union != frozenset(range(graph.n)):
            raise GraphError("bipartition does not cover the vertex set")
        if require_bipartite and graph.m:
            in_a = np.zeros(graph.n, dtype=bool)
            in_a[[int(v) for v in self.side_a]] = True
            ea = graph.edge_array()
            same = in_a[ea[:, 0]] == in_a[ea[:, 1]]
            if same.any():
                u, v = ea[same][0]
                raise GraphError(f"edge ({u}, {v}) inside one side")

    def side_of(self, v):
        if v in self.side_a:
            return 0
        if v in self.side_b:
            return 1
        raise GraphError(f"vertex {v} in neither side")


class WeightAssignment:
    """Nonnegative rational vertex weights, not identically zero."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        ws = tuple(Fraction(w) for w in weights)
        if not ws:
            raise GraphError("weight assignment must cover at least one vertex")
        if any(w < 0 for w in ws):
            raise GraphError("negative weight")
        if all(w == 0 for w in ws):
            raise GraphError("weights are identically zero")
        self.weights = ws

    @classmethod
    def uniform(cls, n, value=1):
        return cls([Fraction(value)] * n)

    @classmethod
    def from_degrees(cls, graph):
        return cls([Fraction(graph.degree(v)) for v in range(graph.n)])

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, v):
        return self.weights[v]

    def __iter__(self):
        return iter(self.weights)

    def total(self, subset=None):
        if subset is None:
            return sum(self.weights, Fraction(0))
        return sum((self.weights[v] for v in subset), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, WeightAssignment):
            return self.weights == other.weights
        return NotImplemented

    def __repr__(self):
        return f"WeightAssignment({list(self.weights)!r})"
