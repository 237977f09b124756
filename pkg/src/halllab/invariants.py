"""Exact graph invariants: independence numbers, Hall ratio, clique number,
the Turan-type average-degree bound, and greedy cover coloring.

Exact independence numbers come from a branch-and-bound solver over vertex
bitmasks; everything subset-indexed (the full alpha table, the Hall ratio
scan) is limited to n <= 24 and served by the compiled kernels when those
are available. Searches take an explicit node budget and raise
BudgetExceededError instead of silently returning a bound.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .errors import BudgetExceededError, GraphError
from .graph import WeightAssignment
from .rng import as_seed

MAX_TABLE_N = 24
DEFAULT_NODE_LIMIT = 20_000_000


def _mask_to_set(mask, vertex_ids=None):
    out = []
    while mask:
        low = mask & -mask
        v = low.bit_length() - 1
        out.append(v if vertex_ids is None else vertex_ids[v])
        mask ^= low
    return frozenset(out)


def is_independent(graph, subset):
    subset = [int(v) for v in subset]
    sset = set(subset)
    adj = graph.adj
    return all(not (adj[v] & sset) for v in subset)


class AlphaTable:
    """alpha(G[S]) for every subset S of V, indexed by bitmask."""

    __slots__ = ("n", "table")

    def __init__(self, n, table):
        self.n = n
        self.table = table

    def alpha(self, subset):
        if isinstance(subset, int):
            mask = subset
        else:
            mask = 0
            for v in subset:
                mask |= 1 << int(v)
        if mask < 0 or mask >= (1 << self.n):
            raise GraphError("subset mask out of range")
        return int(self.table[mask])


def alpha_table(graph):
    """Build the full 2^n independence-number table (n <= 24)."""
    if graph.n > MAX_TABLE_N:
        raise GraphError(
            f"alpha table needs n <= {MAX_TABLE_N}, got {graph.n}")
    masks = graph.adjacency_masks()
    closed = [masks[v] | (1 << v) for v in range(graph.n)]
    return AlphaTable(graph.n, _kernels.alpha_table_fill(graph.n, closed))


def alpha_exact(graph, node_limit=DEFAULT_NODE_LIMIT):
    """Independence number with witness: (alpha, frozenset)."""
    if graph.n == 0:
        return 0, frozenset()
    w, mask, nodes, done = _kernels.mwis_solve(
        graph.n, graph.adjacency_masks(), [1] * graph.n, node_limit)
    if not done:
        raise BudgetExceededError(
            f"independence search exhausted {node_limit} nodes", nodes=nodes)
    return int(w), _mask_to_set(mask)


def alpha_weighted(graph, weights, node_limit=DEFAULT_NODE_LIMIT):
    """Maximum total weight of an independent set, with witness.

    Weights may be a WeightAssignment or any sequence of nonnegative
    rationals. Zero-weight vertices cannot change the optimum and are
    excluded from both search and witness. Exact: rationals are scaled to
    integers by the common denominator before solving.
    """
    if not isinstance(weights, WeightAssignment):
        weights = WeightAssignment(weights)
    if len(weights) != graph.n:
        raise GraphError("weight vector length does not match vertex count")
    support = [v for v in range(graph.n) if weights[v] > 0]
    sub, kept = graph.induced(support)
    denom = math.lcm(*(weights[v].denominator for v in kept))
    ints = [(weights[v] * denom).numerator for v in kept]
    w, mask, nodes, done = _kernels.mwis_solve(
        sub.n, sub.adjacency_masks(), ints, node_limit)
    if not done:
        raise BudgetExceededError(
            f"weighted independence search exhausted {node_limit} nodes",
            nodes=nodes)
    return Fraction(int(w), denom), _mask_to_set(mask, kept)


@dataclass(frozen=True)
class HallRatioResult:
    """Hall ratio (or a sampled lower bound when exact=False) plus the
    witness subset attaining it."""

    value: Fraction
    witness: frozenset
    exact: bool


def hall_ratio(graph, sample_trials=64, sample_size=16, seed=0):
    """max over nonempty S of |S| / alpha(G[S]).

    Exact (full subset scan over the alpha table) for n <= 24. Larger
    graphs get a sampled lower bound over random induced subgraphs,
    labelled exact=False. Witness ties favor smaller subsets, then smaller
    bitmask, so results are reproducible.
    """
    if graph.n < 1:
        raise GraphError("Hall ratio needs at least one vertex")
    if graph.n <= MAX_TABLE_N:
        table = alpha_table(graph)
        p, a, mask = _kernels.hall_ratio_scan(table.table, graph.n)
        return HallRatioResult(Fraction(p, a), _mask_to_set(mask), True)
    rng = as_seed(seed).rng()
    best = HallRatioResult(Fraction(1), frozenset([0]), False)
    for _ in range(sample_trials):
        size = min(sample_size, graph.n)
        subset = sorted(int(v) for v in rng.choice(graph.n, size=size,
                                                   replace=False))
        sub, kept = graph.induced(subset)
        inner = hall_ratio(sub)
        if inner.value > best.value:
            best = HallRatioResult(
                inner.value, frozenset(kept[v] for v in inner.witness), False)
    return best


def clique_number(graph, node_limit=DEFAULT_NODE_LIMIT):
    """Clique number with witness, via independence in the complement."""
    w, wit = alpha_exact(graph.complement(), node_limit)
    return w, wit


def turan_bound(graph, node_limit=DEFAULT_NODE_LIMIT):
    """n / alpha(G) - 1: no graph has smaller average degree (Turan)."""
    n = graph.n
    if n < 1:
        raise GraphError("Turan bound needs at least one vertex")
    val, _ = alpha_exact(graph, node_limit)
    return Fraction(n, val) - 1


def greedy_cover_coloring(graph, node_limit=DEFAULT_NODE_LIMIT):
    """Cover V by repeatedly removing a maximum independent set.

    Returns the list of classes in removal order. Class count is at most
    ceil(rho * ln n) + 1 because each step covers at least a 1/rho fraction
    of what is left.
    """
    classes = []
    alive = list(range(graph.n))
    while alive:
        sub, kept = graph.induced(alive)
        _, wit = alpha_exact(sub, node_limit)
        cls = frozenset(kept[v] for v in wit)
        classes.append(cls)
        alive = [v for v in alive if v not in cls]
    return classes
