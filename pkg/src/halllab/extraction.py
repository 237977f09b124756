"""Extracting a dense semi-regular pair from a dense graph, and the full
certification pipeline built on it.

Stages (each deterministic given the seed): derandomized max-cut keeps at
least half the edges as a spanning bipartite subgraph; peeling to minimum
degree 8aq leaves a core the later averaging arguments can rely on; and
side selection either takes the whole small side (when |A2| >= q |B2|) or
randomly downsamples B2 with exact probability |A2| / (4 q |B2|), keeping
the q|B| smallest-id A-vertices with at least a neighbors in the sample and
trimming each to exactly a. The pipeline then samples pattern graphs H_B on
the B side and certifies chi_f(H_B) > c through the degree-weight dual
bound whenever alpha_w(H_B) < (sqrt(q) a + q)|B|.
"""

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import ExtractionError, GraphError
from .generators import SemiRegularPair, sample_hb
from .graph import Bipartition, average_degree, build_graph
from .invariants import DEFAULT_NODE_LIMIT, alpha_weighted
from .rng import as_seed


@dataclass(frozen=True)
class ExtractionTrace:
    """Stage-by-stage diagnostics of one extraction run."""

    input_n: int
    input_m: int
    average_degree: Fraction
    a: int
    q: int
    degree_threshold: int  # 32aq, the analysed regime
    warnings: tuple
    cut_edges: int = 0
    peel_threshold: int = 0
    core_n: int = 0
    core_m: int = 0
    a2_size: int = 0
    b2_size: int = 0
    swapped: bool = False
    deterministic: bool = False
    retries: int = 0
    b_size: int = 0
    qualified: int = 0
    a_size: int = 0
    success: bool = False
    failure: str = ""

    def to_dict(self):
        d = asdict(self)
        d["average_degree"] = str(self.average_degree)
        d["warnings"] = list(self.warnings)
        return d


def max_cut_bipartize(graph):
    """Spanning bipartite subgraph from greedy + single-flip local search.

    At the local-search fixpoint each vertex has at least half its edges
    crossing, so the kept cut has >= ceil(m/2) edges.
    """
    side = _kernels.greedy_bipartition(graph.indptr, graph.indices)
    _kernels.maxcut_refine(graph.indptr, graph.indices, side)
    ea = graph.edge_array()
    if len(ea):
        cross = side[ea[:, 0]] != side[ea[:, 1]]
        ea = ea[cross]
    bip = build_graph(graph.n, ea)
    assert 2 * bip.m >= graph.m
    parts = Bipartition(
        frozenset(int(v) for v in np.flatnonzero(side == 0)),
        frozenset(int(v) for v in np.flatnonzero(side == 1)))
    return bip, parts


def peel_min_degree(graph, t):
    """Maximal induced subgraph with minimum degree >= t.

    Returns (core, kept) with kept the sorted original ids; unique and
    independent of deletion order, possibly empty.
    """
    if t < 0:
        raise GraphError("peel threshold must be nonnegative")
    alive = _kernels.core_peel(graph.indptr, graph.indices, t)
    kept = [int(v) for v in np.flatnonzero(alive)]
    core, _ = graph.induced(kept)
    return core, kept


def _count_into(graph, mark):
    """Per-vertex count of neighbors v with mark[v], CSR-vectorized."""
    cs = np.concatenate(([0], np.cumsum(mark[graph.indices])))
    return cs[graph.indptr[1:]] - cs[graph.indptr[:-1]]


def select_semiregular(graph, parts, a, q, seed, max_retries=64):
    """Choose (A, B) from a bipartite graph so that the result is an
    (a, q) semi-regular pair.

    The larger side plays A2 (ties: smaller total id). If |A2| >= q |B2|
    the whole of B2 is B, deterministically; otherwise B is a random
    down-sample of B2 with exact inclusion probability |A2| / (4 q |B2|),
    retried up to max_retries times. A is the q|B| smallest qualified
    (>= a neighbors in B) A2-vertices, each trimmed to its a smallest
    B-neighbors. Returns (pair_or_None, info); the pair graph is in local
    A-block/B-block ids with source_ids mapping back to graph's ids.
    """
    if a < 1 or q < 1:
        raise GraphError("pair parameters must be positive")
    parts.validate(graph, require_bipartite=True)
    sa = sorted(int(v) for v in parts.side_a)
    sb = sorted(int(v) for v in parts.side_b)
    swapped = (len(sa), sum(sa)) < (len(sb), sum(sb))
    if swapped:
        sa, sb = sb, sa
    info = {"a2_size": len(sa), "b2_size": len(sb), "swapped": swapped,
            "deterministic": False, "retries": 0, "b_size": 0,
            "qualified": 0, "failure": ""}

    def finish(b_sel):
        mark = np.zeros(graph.n, dtype=bool)
        mark[b_sel] = True
        counts = _count_into(graph, mark)
        qualified = [v for v in sa if counts[v] >= a]
        info["b_size"] = len(b_sel)
        info["qualified"] = len(qualified)
        need = q * len(b_sel)
        if need == 0:
            info["failure"] = "empty B sample"
            return None
        if len(qualified) < need:
            info["failure"] = (f"only {len(qualified)} qualified A-vertices, "
                               f"need {need}")
            return None
        chosen_a = qualified[:need]
        edges = []
        bpos = {v: i for i, v in enumerate(b_sel)}
        na = len(chosen_a)
        for i, v in enumerate(chosen_a):
            nb = [int(u) for u in graph.neighbors(v) if mark[u]][:a]
            edges.extend((i, na + bpos[u]) for u in nb)
        pair_graph = build_graph(na + len(b_sel), edges)
        pair = SemiRegularPair(pair_graph, tuple(range(na)),
                               tuple(range(na, na + len(b_sel))), a, q,
                               source_ids=tuple(chosen_a) + tuple(b_sel))
        pair.validate()
        return pair

    if len(sa) >= q * len(sb):
        info["deterministic"] = True
        pair = finish(list(sb))
        return pair, info
    rng = as_seed(seed).rng()
    den = 4 * q * len(sb)
    num = len(sa)  # < q |B2| <= den/4, so the probability is below 1/4
    for attempt in range(max_retries):
        info["retries"] = attempt
        draws = rng.integers(0, den, size=len(sb))
        b_sel = [sb[i] for i in np.flatnonzero(draws < num)]
        if not b_sel:
            info["failure"] = "empty B sample"
            continue
        pair = finish(b_sel)
        if pair is not None:
            info["failure"] = ""
            return pair, info
    return None, info


def extract_semiregular(graph, a, q, seed, max_retries=64):
    """Full extraction: bipartize, peel to 8aq, select sides.

    Soft preconditions (a >= 20 and average degree >= 32aq) are reported as
    warnings, not errors, so desk-scale parameters can still run. Raises
    ExtractionError (with the trace attached) when any stage dies; on
    success the pair's source_ids refer to the input graph and every pair
    edge is an input edge.
    """
    if graph.n < 1:
        raise GraphError("extraction needs a nonempty graph")
    warnings = []
    if a < 20:
        warnings.append(f"a = {a} below the analysed regime (a >= 20)")
    threshold = 32 * a * q
    avg = average_degree(graph)
    if avg < threshold:
        warnings.append(
            f"average degree {avg} below the analysed threshold {threshold}")
    base = dict(input_n=graph.n, input_m=graph.m, average_degree=avg,
                a=a, q=q, degree_threshold=threshold,
                warnings=tuple(warnings))

    bip, parts = max_cut_bipartize(graph)
    base["cut_edges"] = bip.m
    t = 8 * a * q
    base["peel_threshold"] = t
    core, kept = peel_min_degree(bip, t)
    base.update(core_n=core.n, core_m=core.m)
    if core.n == 0:
        trace = ExtractionTrace(**base, failure="peeled core is empty")
        raise ExtractionError("peeled core is empty", trace=trace)
    in_a = parts.side_a
    parts_core = Bipartition(
        frozenset(i for i, v in enumerate(kept) if v in in_a),
        frozenset(i for i, v in enumerate(kept) if v not in in_a))
    pair, info = select_semiregular(core, parts_core, a, q,
                                    as_seed(seed), max_retries)
    failure = info.pop("failure")
    base.update(info)
    if pair is None:
        trace = ExtractionTrace(**base, failure=failure or "selection failed")
        raise ExtractionError(trace.failure, trace=trace)
    source = tuple(kept[c] for c in pair.source_ids)
    pair = SemiRegularPair(pair.graph, pair.side_a, pair.side_b,
                           pair.a, pair.q, source_ids=source)
    trace = ExtractionTrace(**base, a_size=len(pair.side_a), success=True)
    return pair, trace


def theorem1_parameters(c):
    """Desk constants for target bound c: a = 2c, q = 4c^2, so the dense
    regime needs average degree 32aq = 256 c^3 and a certified sample gives
    chi_f > qa / (sqrt(q) a + q) = c."""
    if c < 1:
        raise GraphError("target bound must be >= 1")
    a = 2 * c
    q = 4 * c * c
    return {"c": c, "a": a, "q": q, "degree_threshold": 32 * a * q}


def alpha_below_sqrt_threshold(alpha_w, a, q, n_b):
    """Exact test alpha_w < (sqrt(q) a + q) n_b without forming sqrt(q)."""
    excess = Fraction(alpha_w) - q * n_b
    if excess <= 0:
        return True
    return excess * excess < q * Fraction(a * n_b) ** 2


def certify_sample(pair, hb, node_limit=DEFAULT_NODE_LIMIT):
    """Weigh H_B by pair degrees and evaluate the dual bound.

    w(B) = qa|B| exactly; the sample is certified when alpha_w(H_B) falls
    below (sqrt(q) a + q)|B|, which forces chi_f(H_B) >= w(B)/alpha_w >
    qa / (sqrt(q) a + q).
    """
    weights = pair.degree_weights_b()
    total = sum(weights)
    assert total == pair.q * pair.a * len(pair.side_b)
    val, wit = alpha_weighted(hb, [Fraction(w) for w in weights], node_limit)
    certified = alpha_below_sqrt_threshold(val, pair.a, pair.q,
                                           len(pair.side_b))
    return {
        "alpha_w": val,
        "witness_size": len(wit),
        "total_weight": total,
        "chi_f_lower": Fraction(total) / val,
        "hb_edges": hb.m,
        "certified": certified,
    }


def theorem1_pipeline(graph, c, seed, trials=50, max_retries=64,
                      node_limit=DEFAULT_NODE_LIMIT, parallel=None):
    """Extract a pair with the Theorem-1 constants and certify samples.

    Sub-streams: extraction uses seed.child(0), trial t uses
    seed.child(1 + t), so per-trial records do not depend on trial count or
    scheduling. Returns a plain dict (params, trace, trials, aggregates).
    """
    params = theorem1_parameters(c)
    seed = as_seed(seed)
    pair, trace = extract_semiregular(graph, params["a"], params["q"],
                                      seed.child(0), max_retries)

    def run_trial(t):
        hb = sample_hb(pair, seed.child(1 + t))
        rec = {"trial": t}
        rec.update(certify_sample(pair, hb, node_limit))
        return rec

    if parallel and parallel > 1 and trials > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            records = list(pool.map(run_trial, range(trials)))
    else:
        records = [run_trial(t) for t in range(trials)]
    certified = sum(1 for r in records if r["certified"])
    return {
        "params": params,
        "trace": trace.to_dict(),
        "pair": {"a_size": len(pair.side_a), "b_size": len(pair.side_b),
                 "a": pair.a, "q": pair.q},
        "trials": records,
        "aggregates": {
            "trials": trials,
            "certified": certified,
            "certified_fraction": str(Fraction(certified, trials)) if trials else "0",
            "best_chi_f_lower": str(max((r["chi_f_lower"] for r in records),
                                        default=Fraction(0))),
        },
    }
