"""Subdivision patterns inside host graphs.

A 1-subdivision of a pattern H places every pattern vertex on a distinct
host vertex (branch_map) and every pattern edge on its own distinct host
vertex adjacent to both endpoint images (sub_map). Witnesses are plain data
and can be re-verified against their host from scratch. In a bipartite
host, every pattern edge is forced to one side, so a witness splits the
pattern into the side-A and side-B induced subgraphs; and when all branch
vertices sit in a part whose opposite side meets each of them exactly once
per layer, the pattern edges subdivided inside one layer form a matching.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import GraphError
from .graph import Graph, build_graph
from .invariants import hall_ratio
from .rng import as_seed


@dataclass(frozen=True)
class SubdivisionWitness:
    host: Graph
    pattern: Graph
    branch_map: tuple  # pattern vertex i -> host vertex
    sub_map: tuple     # ((u, v), z): pattern edge u < v -> host vertex z

    def sub_dict(self):
        return {e: z for e, z in self.sub_map}

    def branch_image(self):
        return frozenset(self.branch_map)

    def sub_image(self):
        return frozenset(z for _, z in self.sub_map)


@dataclass(frozen=True)
class WitnessReport:
    ok: bool
    failures: tuple


def verify_witness(witness):
    """Re-check a SubdivisionWitness bottom-up; every defect is reported."""
    w = witness
    host, pattern = w.host, w.pattern
    failures = []
    if len(w.branch_map) != pattern.n:
        failures.append("branch_map length != pattern vertex count")
        return WitnessReport(False, tuple(failures))
    for u, h in enumerate(w.branch_map):
        if not (0 <= h < host.n):
            failures.append(f"branch image {h} of {u} outside host")
    if len(set(w.branch_map)) != len(w.branch_map):
        failures.append("branch images are not distinct")
    edges = {e for e, _ in w.sub_map}
    pat_edges = {(u, v) for u, v in pattern.edges()}
    if edges != pat_edges:
        missing = sorted(pat_edges - edges)
        extra = sorted(edges - pat_edges)
        if missing:
            failures.append(f"pattern edges without subdivision vertex: {missing}")
        if extra:
            failures.append(f"sub_map keys that are not pattern edges: {extra}")
    subs = [z for _, z in w.sub_map]
    if len(set(subs)) != len(subs):
        failures.append("subdivision images are not distinct")
    overlap = set(subs) & set(w.branch_map)
    if overlap:
        failures.append(f"branch and subdivision images overlap: {sorted(overlap)}")
    for (u, v), z in w.sub_map:
        if not (0 <= z < host.n):
            failures.append(f"subdivision image {z} outside host")
            continue
        if u >= len(w.branch_map) or v >= len(w.branch_map):
            continue
        for end in (u, v):
            h = w.branch_map[end]
            if 0 <= h < host.n and not host.has_edge(z, h):
                failures.append(
                    f"host edge ({z}, {h}) missing for pattern edge ({u}, {v})")
    return WitnessReport(not failures, tuple(failures))


@dataclass(frozen=True)
class DecomposedPattern:
    side_a_pattern: Graph
    side_a_vertices: tuple  # pattern ids, sorted
    side_b_pattern: Graph
    side_b_vertices: tuple


def decompose_bipartite_witness(witness, parts):
    """Split the pattern by which side its branch vertices landed in.

    In a bipartite host each subdivision vertex is adjacent to both branch
    images of its pattern edge, so those images share a side: no pattern
    edge crosses the split, and the two induced pieces partition the
    pattern's edges. Hence alpha(side A piece) + alpha(side B piece) =
    alpha(pattern).
    """
    w = witness
    parts.validate(w.host, require_bipartite=True)
    idx_a = [u for u in range(w.pattern.n) if w.branch_map[u] in parts.side_a]
    idx_b = [u for u in range(w.pattern.n) if w.branch_map[u] not in parts.side_a]
    set_a = set(idx_a)
    for u, v in w.pattern.edges():
        if (u in set_a) != (v in set_a):
            raise GraphError(
                f"pattern edge ({u}, {v}) spans both sides; witness or "
                "bipartition is invalid")
    ga, kept_a = w.pattern.induced(idx_a)
    gb, kept_b = w.pattern.induced(idx_b)
    return DecomposedPattern(ga, tuple(kept_a), gb, tuple(kept_b))


def layer_edge_groups(witness, layers):
    """Pattern edges grouped by the layer holding their subdivision vertex.
    Edges whose subdivision vertex is in no listed layer land under None."""
    where = {}
    for i, layer in enumerate(layers):
        for v in layer:
            where[int(v)] = i
    groups = {i: [] for i in range(len(layers))}
    groups[None] = []
    for e, z in witness.sub_map:
        groups[where.get(int(z))].append(e)
    return groups


def is_matching(edges):
    seen = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


@dataclass(frozen=True)
class SubdivisionSearch:
    witness: Optional[SubdivisionWitness]
    completed: bool
    nodes: int


def find_subdivision(host, pattern, node_budget=2_000_000):
    """Search the host for a 1-subdivision of the pattern.

    Exhaustive backtracking: pattern vertices in descending-degree order are
    mapped to host candidates in ascending degree-deficit order, and each
    pattern edge gets its subdivision vertex as soon as both ends are
    placed. A None witness means "no subdivision" only when completed is
    True; budget exhaustion leaves completed False (unknown).
    """
    p = pattern.n
    state = {"nodes": 0, "aborted": False}
    if p == 0:
        return SubdivisionSearch(
            SubdivisionWitness(host, pattern, (), ()), True, 0)
    if p + pattern.m > host.n:
        return SubdivisionSearch(None, True, 0)
    pat_deg = [pattern.degree(u) for u in range(p)]
    order = sorted(range(p), key=lambda u: (-pat_deg[u], u))
    pos = {u: k for k, u in enumerate(order)}
    host_deg = [host.degree(h) for h in range(host.n)]
    cand = {}
    for u in range(p):
        hs = [h for h in range(host.n) if host_deg[h] >= pat_deg[u]]
        hs.sort(key=lambda h: (host_deg[h] - pat_deg[u], h))
        cand[u] = hs
    pat_adj = pattern.adj
    host_adj = host.adj
    branch = [-1] * p
    used = set()
    sub_assign = {}

    def place_edges(pending, k):
        if state["aborted"]:
            return None
        if not pending:
            return place_vertex(k + 1)
        u, v = pending[0]
        hu, hv = branch[u], branch[v]
        key = (u, v) if u < v else (v, u)
        for z in sorted((host_adj[hu] & host_adj[hv]) - used):
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                state["aborted"] = True
                return None
            sub_assign[key] = z
            used.add(z)
            found = place_edges(pending[1:], k)
            if found is not None:
                return found
            used.discard(z)
            del sub_assign[key]
            if state["aborted"]:
                return None
        return None

    def place_vertex(k):
        if state["aborted"]:
            return None
        if k == p:
            return SubdivisionWitness(host, pattern, tuple(branch),
                                      tuple(sorted(sub_assign.items())))
        u = order[k]
        pending = [(u, v) for v in sorted(pat_adj[u]) if pos[v] < k]
        for h in cand[u]:
            if h in used:
                continue
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                state["aborted"] = True
                return None
            branch[u] = h
            used.add(h)
            found = place_edges(pending, k)
            if found is not None:
                return found
            used.discard(h)
            branch[u] = -1
            if state["aborted"]:
                return None
        return None

    witness = place_vertex(0)
    completed = witness is not None or not state["aborted"]
    return SubdivisionSearch(witness, completed, state["nodes"])


@dataclass(frozen=True)
class PatternProbe:
    value: Fraction
    witness: Optional[SubdivisionWitness]
    exact: bool
    patterns_checked: int


def max_pattern_hall_ratio(host, max_branch=5, node_budget=2_000_000,
                           allowed_branch=None, mode="exhaustive",
                           samples=200, seed=0):
    """Largest Hall ratio over patterns whose 1-subdivision embeds in host.

    Enumerates branch sets up to max_branch vertices; for each, enumerates
    the realizable edge sets (each pattern edge needs its own subdivision
    vertex, distinct across edges) and takes the best hall_ratio among the
    maximal ones. Exhaustive mode is exact when neither max_branch nor the
    node budget truncated anything, and is meant for tiny hosts; sample mode
    draws random branch sets and always reports a lower bound.
    """
    if host.n < 1:
        raise GraphError("pattern probe needs a nonempty host")
    if allowed_branch is None:
        verts = list(range(host.n))
    else:
        verts = sorted(int(v) for v in set(allowed_branch))
        if not verts:
            raise GraphError("allowed_branch is empty")
        if verts[0] < 0 or verts[-1] >= host.n:
            raise GraphError("allowed_branch outside host")
    host_adj = host.adj
    single = build_graph(1, [])
    best = PatternProbe(
        Fraction(1),
        SubdivisionWitness(host, single, (verts[0],), ()),
        True, 0)
    state = {"nodes": 0, "patterns": 0, "truncated": False}

    def probe_branch_set(S):
        Sset = set(S)
        pairs = []
        cands = []
        for u, v in itertools.combinations(range(len(S)), 2):
            c = (host_adj[S[u]] & host_adj[S[v]]) - Sset
            if c:
                pairs.append((u, v))
                cands.append(sorted(c))
        found = []  # (pattern edge list,) for maximal realizable edge sets

        def rec(i, chosen, used, excluded):
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                state["truncated"] = True
                return
            if i == len(pairs):
                for j in excluded:
                    if any(z not in used for z in cands[j]):
                        return  # extendable, a superset leaf covers it
                found.append(list(chosen))
                return
            free = [z for z in cands[i] if z not in used]
            for z in free:
                chosen.append(pairs[i])
                used.add(z)
                rec(i + 1, chosen, used, excluded)
                used.discard(z)
                chosen.pop()
                if state["truncated"]:
                    return
            excluded.append(i)
            rec(i + 1, chosen, used, excluded)
            excluded.pop()

        rec(0, [], set(), [])
        best_here = None
        for edge_set in found:
            state["patterns"] += 1
            pattern = build_graph(len(S), edge_set)
            value = hall_ratio(pattern).value if edge_set else Fraction(1)
            if best_here is None or value > best_here[0]:
                best_here = (value, edge_set)
        if not found:
            state["patterns"] += 1
            best_here = (Fraction(1), [])
        return best_here

    def realize_witness(S, edge_set):
        # rebuild a concrete subdivision assignment for the winning pattern
        pattern = build_graph(len(S), edge_set)
        sub = find_subdivision_into_branch(host, pattern, S)
        assert sub is not None
        return sub

    def consider(S):
        nonlocal best
        got = probe_branch_set(S)
        if got is None:
            return
        value, edge_set = got
        if value > best.value:
            best = PatternProbe(value, realize_witness(S, edge_set),
                                True, 0)

    if mode == "exhaustive":
        top = min(max_branch, len(verts))
        for size in range(1, top + 1):
            for S in itertools.combinations(verts, size):
                consider(list(S))
                if state["truncated"]:
                    break
            if state["truncated"]:
                break
        exact = not state["truncated"] and max_branch >= len(verts)
    elif mode == "sample":
        rng = as_seed(seed).rng()
        for _ in range(samples):
            size = int(rng.integers(1, min(max_branch, len(verts)) + 1))
            S = sorted(int(v) for v in rng.choice(verts, size=size,
                                                  replace=False))
            consider(S)
            if state["truncated"]:
                break
        exact = False
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return PatternProbe(best.value, best.witness, exact, state["patterns"])


def find_subdivision_into_branch(host, pattern, branch_vertices):
    """Find a witness whose branch_map is exactly the given host vertices
    (in order). Returns the witness or None."""
    branch = list(branch_vertices)
    host_adj = host.adj
    used = set(branch)
    sub_assign = {}
    edges = list(pattern.edges())

    def rec(i):
        if i == len(edges):
            return SubdivisionWitness(host, pattern, tuple(branch),
                                      tuple(sorted(sub_assign.items())))
        u, v = edges[i]
        for z in sorted((host_adj[branch[u]] & host_adj[branch[v]]) - used):
            sub_assign[(u, v)] = z
            used.add(z)
            got = rec(i + 1)
            if got is not None:
                return got
            used.discard(z)
            del sub_assign[(u, v)]
        return None

    return rec(0)
