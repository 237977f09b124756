"""Graph constructions.

Deterministic families (Kneser graphs, Mycielskians, joins of disjoint
copies, 1-subdivisions) and the random models used by the separation
experiments: binomial random graphs with exact rational edge probability,
semi-regular bipartite pairs, the pair-sampling model that turns a
semi-regular pair into a pattern graph on its B side, and layered random
graphs whose layer sizes follow n^(1 - eps*4^i).

All randomness flows through Seed (see halllab.rng); equal seeds give
byte-identical constructions.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GraphError
from .graph import Bipartition, Graph, build_graph
from .rng import as_seed
from .subdivision import SubdivisionWitness

MAX_VERTICES = 500_000
MAX_EDGES = 8_000_000


def kneser(a, b):
    """Kneser graph: vertices are the b-subsets of {1..a} in lexicographic
    order, adjacent when disjoint."""
    if b < 1 or a < 2 * b:
        raise GraphError("kneser needs a >= 2b and b >= 1")
    n = math.comb(a, b)
    if n > MAX_VERTICES:
        raise GraphError(f"kneser graph would have {n} vertices")
    combos = list(itertools.combinations(range(1, a + 1), b))
    index = {c: i for i, c in enumerate(combos)}
    edges = []
    for i, c in enumerate(combos):
        cset = set(c)
        rest = [x for x in range(1, a + 1) if x not in cset]
        for d in itertools.combinations(rest, b):
            j = index[d]
            if j > i:
                edges.append((i, j))
    return build_graph(n, edges)


def mycielski(graph):
    """Mycielskian: original vertices 0..n-1, shadow of v at n+v, apex 2n."""
    n = graph.n
    if n < 1:
        raise GraphError("mycielski needs at least one vertex")
    if 2 * n + 1 > MAX_VERTICES:
        raise GraphError("mycielskian too large")
    edges = []
    for u, v in graph.edges():
        edges.append((u, v))
        edges.append((u, n + v))
        edges.append((v, n + u))
    for v in range(n):
        edges.append((n + v, 2 * n))
    return build_graph(2 * n + 1, edges)


def join_of_copies(graph, k):
    """k disjoint copies of the graph plus all edges between distinct
    copies. Copy c occupies ids c*n .. c*n + n - 1."""
    n = graph.n
    if k < 1:
        raise GraphError("join needs k >= 1")
    if n < 1:
        raise GraphError("join needs a nonempty graph")
    total_m = k * graph.m + (k * (k - 1) // 2) * n * n
    if k * n > MAX_VERTICES or total_m > MAX_EDGES:
        raise GraphError("join of copies too large")
    ea = graph.edge_array()
    chunks = [ea + c * n for c in range(k)] if graph.m else []
    base = np.arange(n, dtype=np.int64)
    for c1 in range(k):
        for c2 in range(c1 + 1, k):
            us = np.repeat(base + c1 * n, n)
            vs = np.tile(base + c2 * n, n)
            chunks.append(np.column_stack((us, vs)))
    edges = np.vstack(chunks) if chunks else np.empty((0, 2), np.int64)
    out = build_graph(k * n, edges)
    assert out.m == total_m
    return out


def one_subdivision(graph):
    """Replace each edge by a path of length two through a fresh vertex.

    Edge i of the sorted edge list gets subdivision vertex n+i. Returns the
    new graph together with the identity SubdivisionWitness, which embeds
    the original graph's 1-subdivision in the result.
    """
    n = graph.n
    ea = graph.edge_array()
    if n + len(ea) > MAX_VERTICES:
        raise GraphError("subdivision too large")
    edges = []
    sub_map = []
    for i, (u, v) in enumerate(ea):
        u, v = int(u), int(v)
        z = n + i
        edges.append((u, z))
        edges.append((v, z))
        sub_map.append(((u, v), z))
    host = build_graph(n + len(ea), edges)
    witness = SubdivisionWitness(host, graph, tuple(range(n)),
                                 tuple(sub_map))
    return host, witness


def gnp(n, p, seed):
    """Binomial random graph with exact rational edge probability.

    Each of the C(n, 2) pairs is included independently with probability
    num/den, decided by one integer draw per pair (draw < num), taken in
    row-major order over the upper triangle.
    """
    if n < 0 or n > 20_000:
        raise GraphError("gnp vertex count out of range")
    p = Fraction(p)
    if not (0 <= p <= 1):
        raise GraphError("edge probability must be in [0, 1]")
    num, den = p.numerator, p.denominator
    rng = as_seed(seed).rng()
    chunks = []
    for u in range(n - 1):
        cnt = n - 1 - u
        draws = rng.integers(0, den, size=cnt)
        hit = np.flatnonzero(draws < num)
        if len(hit):
            vs = (u + 1 + hit).astype(np.int64)
            us = np.full(len(hit), u, dtype=np.int64)
            chunks.append(np.column_stack((us, vs)))
    edges = np.vstack(chunks) if chunks else np.empty((0, 2), np.int64)
    return build_graph(n, edges)


@dataclass(frozen=True)
class SemiRegularPair:
    """Bipartite pair (A, B): every A-vertex has exactly a neighbors, all
    in B, and |A| = q |B|. Vertex ids of graph are the A block followed by
    the B block; source_ids, when present, maps them back to the graph the
    pair was extracted from."""

    graph: Graph
    side_a: tuple
    side_b: tuple
    a: int
    q: int
    source_ids: tuple = None

    def validate(self):
        g = self.graph
        if self.a < 1 or self.q < 1:
            raise GraphError("pair parameters must be positive")
        if set(self.side_a) & set(self.side_b):
            raise GraphError("pair sides overlap")
        if set(self.side_a) | set(self.side_b) != set(range(g.n)):
            raise GraphError("pair sides must cover the pair graph")
        if len(self.side_a) != self.q * len(self.side_b):
            raise GraphError(
                f"|A| = {len(self.side_a)} != q|B| = {self.q * len(self.side_b)}")
        if self.a > len(self.side_b):
            raise GraphError("A-degree exceeds |B|")
        bset = set(self.side_b)
        for v in self.side_a:
            nb = g.neighbors(v)
            if len(nb) != self.a:
                raise GraphError(f"A-vertex {v} has degree {len(nb)} != {self.a}")
            if not all(int(u) in bset for u in nb):
                raise GraphError(f"A-vertex {v} has a neighbor outside B")
        for v in self.side_b:
            if not all(int(u) in set(self.side_a) for u in g.neighbors(v)):
                raise GraphError(f"B-vertex {v} has a neighbor outside A")

    def b_positions(self):
        return {v: i for i, v in enumerate(self.side_b)}

    def degree_weights_b(self):
        """Degrees of the B side inside the pair, B-position order."""
        return [self.graph.degree(v) for v in self.side_b]


def random_semiregular(n_b, a, q, seed):
    """Uniform semi-regular pair: q*n_b A-vertices each picking a uniform
    a-subset of the n_b B-vertices. A block first, then B block."""
    if n_b < 1 or a < 1 or q < 1:
        raise GraphError("pair parameters must be positive")
    if a > n_b:
        raise GraphError("A-degree exceeds |B|")
    n_a = q * n_b
    if n_a + n_b > MAX_VERTICES or n_a * a > MAX_EDGES:
        raise GraphError("pair too large")
    rng = as_seed(seed).rng()
    chunks = []
    for v in range(n_a):
        picks = np.sort(rng.choice(n_b, size=a, replace=False)) + n_a
        chunks.append(np.column_stack(
            (np.full(a, v, dtype=np.int64), picks.astype(np.int64))))
    graph = build_graph(n_a + n_b, np.vstack(chunks))
    return SemiRegularPair(graph, tuple(range(n_a)),
                           tuple(range(n_a, n_a + n_b)), a, q)


def _unrank_pair(k, a):
    """k-th pair (i, j) with 0 <= i < j < a in lexicographic order."""
    i = 0
    block = a - 1
    while k >= block:
        k -= block
        i += 1
        block -= 1
    return i, i + 1 + k


def sample_hb(pair, seed, build_witness=False):
    """Pattern graph on the B side of a semi-regular pair.

    Every A-vertex picks one of its C(a, 2) neighbor pairs uniformly; the
    chosen pairs, collapsed, are the edges of H_B (vertex i is side_b[i]).
    With build_witness=True also returns the subdivision witness embedding
    H_B's 1-subdivision in the pair graph: branch vertices are the B side,
    each edge is subdivided through its smallest choosing A-vertex.
    """
    a = pair.a
    if a < 2:
        raise GraphError("pair sampling needs A-degree >= 2")
    npairs = a * (a - 1) // 2
    rng = as_seed(seed).rng()
    draws = rng.integers(0, npairs, size=len(pair.side_a))
    bpos = pair.b_positions()
    chooser = {}
    for t, v in enumerate(pair.side_a):
        i, j = _unrank_pair(int(draws[t]), a)
        nb = pair.graph.neighbors(v)
        key = (bpos[int(nb[i])], bpos[int(nb[j])])
        if key not in chooser:
            chooser[key] = v
    hb = build_graph(len(pair.side_b), list(chooser.keys()))
    if not build_witness:
        return hb
    witness = SubdivisionWitness(
        pair.graph, hb, tuple(pair.side_b),
        tuple(sorted((e, z) for e, z in chooser.items())))
    return hb, witness


def integer_nth_root(x, k):
    """Largest r with r**k <= x, exactly (big ints welcome)."""
    if x < 0 or k < 1:
        raise ValueError("nth root needs x >= 0, k >= 1")
    if x == 0:
        return 0
    r = 1 << ((x.bit_length() + k - 1) // k)  # upper start, then descend
    while r ** k > x:
        r = (r * (k - 1) + x // r ** (k - 1)) // k
    while (r + 1) ** k <= x:
        r += 1
    return r


def layer_sizes_exact(n, M):
    """Layer sizes r^(4^M - 4^(i-1)) for i = 1..M, where n = r^(4^M).

    With eps = 4^-(M+1) these are exactly n^(1 - eps 4^i); n must be a
    perfect 4^M-th power for the sizes to be integers.
    """
    if M < 1:
        raise GraphError("layer count must be >= 1")
    if n < 1:
        raise GraphError("layered graph needs n >= 1")
    e = 4 ** M
    r = integer_nth_root(n, e)
    if r ** e != n:
        raise GraphError(f"n = {n} is not a perfect {e}-th power")
    return [r ** (e - 4 ** (i - 1)) for i in range(1, M + 1)]


@dataclass(frozen=True)
class LayeredGraph:
    """Random layered graph: every vertex of the A side has exactly one
    uniform neighbor in each layer B_1..B_M, and B = union of layers."""

    graph: Graph
    side_a: tuple
    layers: tuple  # tuple of tuples of vertex ids
    n: int
    M: int
    epsilon: Fraction
    exact: bool  # layer sizes follow the n^(1 - eps 4^i) law exactly

    def b_side(self):
        return tuple(v for layer in self.layers for v in layer)

    def bipartition(self):
        return Bipartition(frozenset(self.side_a), frozenset(self.b_side()))

    def preconditions(self):
        """Size facts the asymptotic argument relies on, checked on this
        instance: |B| <= n (equivalently, average degree >= M)."""
        b_total = sum(len(l) for l in self.layers)
        return {
            "b_total_le_n": b_total <= self.n,
            "avg_degree_ge_M": 2 * self.n * self.M >= self.M * (self.n + b_total),
        }


def _build_layered(n, sizes, seed, exact):
    M = len(sizes)
    if any(s < 1 for s in sizes):
        raise GraphError("layer size 0")
    total = n + sum(sizes)
    if total > MAX_VERTICES or n * M > MAX_EDGES:
        raise GraphError("layered graph too large")
    rng = as_seed(seed).rng()
    layers = []
    chunks = []
    offset = n
    vids = np.arange(n, dtype=np.int64)
    for s in sizes:
        targets = offset + rng.integers(0, s, size=n)
        chunks.append(np.column_stack((vids, targets.astype(np.int64))))
        layers.append(tuple(range(offset, offset + s)))
        offset += s
    graph = build_graph(total, np.vstack(chunks))
    # one draw per (vertex, layer) and layers are disjoint: no collisions
    assert graph.m == n * M
    return LayeredGraph(graph, tuple(range(n)), tuple(layers), n, M,
                        Fraction(1, 4 ** (M + 1)), exact)


def sample_layered(n, M, seed):
    """Layered graph with the exact size law (n must be a 4^M-th power)."""
    return _build_layered(n, layer_sizes_exact(n, M), seed, True)


def sample_layered_scaled(n, layer_sizes, seed):
    """Layered graph with explicitly chosen layer sizes (desk-scale stand-in
    when n is not a perfect power; the size law is not claimed)."""
    return _build_layered(n, [int(s) for s in layer_sizes], seed, False)
