"""Fractional chromatic number, exactly, with checkable certificates.

chi_f is the optimum of the covering LP

    min sum_I x_I   s.t.   sum_{I contains v} x_I >= 1,  x >= 0

over independent sets I. Small graphs can enumerate all maximal independent
sets; the default solves the restricted master over a greedy pool and
generates columns with a weighted-independence pricing oracle (add I while
y(I) > 1 under the current duals y). Everything is exact rationals, and the
result carries both an optimal primal cover and the dual weights w, which
certify optimality through chi_f >= w(V) / alpha_w.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphError
from .graph import WeightAssignment
from .invariants import DEFAULT_NODE_LIMIT, alpha_weighted, is_independent
from .simplex import RationalSimplex


@dataclass(frozen=True)
class ChiFCertificate:
    """Exact chi_f value with an optimal fractional cover (primal) and the
    dual weight vector whose ratio w(V)/alpha_w reproduces the value."""

    value: Fraction
    primal: tuple  # ((frozenset, Fraction), ...)
    dual: WeightAssignment


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    failures: tuple


def greedy_maximal_sets(graph):
    """One greedy maximal independent set per starting vertex, deduplicated,
    in starting-vertex order."""
    adj = graph.adj
    out = []
    seen = set()
    for start in range(graph.n):
        cur = {start}
        for v in range(graph.n):
            if v != start and not (adj[v] & cur):
                cur.add(v)
        fs = frozenset(cur)
        if fs not in seen:
            seen.add(fs)
            out.append(fs)
    return out


def maximal_independent_sets(graph, limit=1_000_000):
    """All maximal independent sets (Bron-Kerbosch with pivoting, run on the
    complement). Exponential in general; meant for n <= 20."""
    n = graph.n
    full = (1 << n) - 1
    masks = graph.adjacency_masks()
    nonadj = [~(masks[v] | (1 << v)) & full for v in range(n)]
    out = []

    def expand(r, p, x):
        if p == 0 and x == 0:
            out.append(r)
            if len(out) > limit:
                raise GraphError("too many maximal independent sets")
            return
        q = p | x
        pivot = -1
        best = -1
        while q:
            low = q & -q
            u = low.bit_length() - 1
            q ^= low
            c = (p & nonadj[u]).bit_count()
            if c > best:
                best = c
                pivot = u
        cand = p & ~nonadj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(r | low, p & nonadj[v], x & nonadj[v])
            p &= ~low
            x |= low
    expand(0, full, 0)
    sets = []
    for mask in out:
        s = set()
        while mask:
            low = mask & -mask
            s.add(low.bit_length() - 1)
            mask ^= low
        sets.append(frozenset(s))
    return sets


def _extend_to_maximal(graph, subset):
    adj = graph.adj
    cur = set(subset)
    for v in range(graph.n):
        if v not in cur and not (adj[v] & cur):
            cur.add(v)
    return frozenset(cur)


def chi_f_exact(graph, method="colgen", node_limit=DEFAULT_NODE_LIMIT,
                max_columns=20_000, max_pivots=500_000):
    """Exact fractional chromatic number with certificate.

    method "colgen" (default) prices columns with the weighted-independence
    solver and works to n around 60; "enumerate" (n <= 20) puts every
    maximal independent set in the pool up front. Both return identical
    values; certificates may differ in which optimal cover they pick.
    """
    n = graph.n
    if n < 1:
        raise GraphError("chi_f needs at least one vertex")
    if graph.m == 0:
        full = frozenset(range(n))
        return ChiFCertificate(Fraction(1), ((full, Fraction(1)),),
                               WeightAssignment.uniform(n, Fraction(1, n)))
    pool = [frozenset([v]) for v in range(n)]
    seen = set(pool)
    if method == "enumerate":
        if n > 20:
            raise GraphError("enumeration method is limited to n <= 20")
        extra = maximal_independent_sets(graph)
    elif method == "colgen":
        extra = greedy_maximal_sets(graph)
    else:
        raise ValueError(f"unknown method {method!r}")
    for s in extra:
        if s not in seen:
            seen.add(s)
            pool.append(s)

    lp = RationalSimplex(n)
    set_of_col = {}
    for s in pool:
        set_of_col[lp.add_column([(v, 1) for v in sorted(s)], 1)] = s
    for v in range(n):
        lp.add_column([(v, -1)], 0)  # surplus: cover may exceed 1
    lp.set_identity_basis(range(n))

    while True:
        value = lp.solve(max_pivots)
        y = lp.duals()
        assert all(w >= 0 for w in y), "negative dual at optimality"
        if method == "enumerate":
            break
        val, wit = alpha_weighted(graph, WeightAssignment(y), node_limit)
        if val <= 1:
            break
        if len(pool) >= max_columns:
            raise GraphError(f"column pool exceeded {max_columns}")
        s = _extend_to_maximal(graph, wit)
        # y(s) >= y(wit) > 1 while every pooled set prices to <= 1, so s is new
        assert s not in seen
        seen.add(s)
        pool.append(s)
        set_of_col[lp.add_column([(v, 1) for v in sorted(s)], 1)] = s

    primal = []
    for j, x in lp.solution().items():
        if j in set_of_col and x > 0:
            primal.append((set_of_col[j], x))
    primal.sort(key=lambda t: sorted(t[0]))
    return ChiFCertificate(value, tuple(primal), WeightAssignment(y))


def chi_f_lower_from_weights(graph, weights, node_limit=DEFAULT_NODE_LIMIT):
    """w(V) / alpha_w(G), a lower bound on chi_f for any admissible w."""
    if not isinstance(weights, WeightAssignment):
        weights = WeightAssignment(weights)
    val, _ = alpha_weighted(graph, weights, node_limit)
    return weights.total() / val


def verify_certificate(graph, cert, node_limit=DEFAULT_NODE_LIMIT):
    """Independently re-check a ChiFCertificate against its graph.

    Confirms: positive value; primal sets independent with positive weights
    summing to the value; every vertex covered at least once; and the dual
    bound w(V)/alpha_w equals the value (which certifies optimality, since
    the primal certifies chi_f <= value and the dual chi_f >= value).
    """
    failures = []
    if cert.value <= 0:
        failures.append(f"value {cert.value} is not positive")
    total = Fraction(0)
    cover = [Fraction(0)] * graph.n
    for s, x in cert.primal:
        if x <= 0:
            failures.append(f"primal weight {x} on {sorted(s)} is not positive")
        if not is_independent(graph, s):
            failures.append(f"primal set {sorted(s)} is not independent")
        total += x
        for v in s:
            if not (0 <= v < graph.n):
                failures.append(f"primal set vertex {v} outside graph")
            else:
                cover[v] += x
    for v in range(graph.n):
        if cover[v] < 1:
            failures.append(f"vertex {v} covered {cover[v]} < 1")
    if total != cert.value:
        failures.append(f"primal total {total} != value {cert.value}")
    try:
        dual = (cert.dual if isinstance(cert.dual, WeightAssignment)
                else WeightAssignment(cert.dual))
        if len(dual) != graph.n:
            failures.append("dual weight count != vertex count")
        else:
            val, _ = alpha_weighted(graph, dual, node_limit)
            bound = dual.total() / val
            if bound != cert.value:
                failures.append(f"dual bound {bound} != value {cert.value}")
    except GraphError as exc:
        failures.append(f"dual weights invalid: {exc}")
    return CertificateReport(not failures, tuple(failures))
