"""Pure-Python kernels.

These mirror the contracts of the compiled module ``halllab._speedups`` and
are used when the extension is unavailable. Subset masks are Python ints, so
unlike the compiled versions they are not limited to word-sized problems.
Both implementations must stay behaviourally identical (same witnesses, same
tie-breaking); the kernel parity tests enforce that.
"""

import numpy as np


def alpha_table_fill(n, closed):
    """Independence number of every induced subgraph of an n-vertex graph.

    closed[v] is the bitmask of v together with its neighbors. Returns a
    uint8 array t of length 2^n with t[mask] = alpha(G[mask]), computed by
    the removal recurrence on the lowest set bit v of mask:

        alpha(S) = max(alpha(S - v), 1 + alpha(S - N[v]))

    Both referenced masks are numerically smaller than S, so one ascending
    pass fills the table.
    """
    size = 1 << n
    closed = [int(c) for c in closed]
    t = bytearray(size)
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        a1 = t[mask ^ low]
        a2 = 1 + t[mask & ~closed[v]]
        t[mask] = a1 if a1 >= a2 else a2
    return np.frombuffer(bytes(t), dtype=np.uint8).copy()


def hall_ratio_scan(table, n):
    """Scan an alpha table for the subset maximizing |S| / alpha(S).

    Returns (popcount, alpha, mask) of the best subset. Ties are broken
    toward smaller subsets, then smaller mask value, so the result is a
    deterministic witness.
    """
    t = bytes(table)
    size = 1 << n
    bp, ba, bm = 1, 1, 1
    for mask in range(2, size):
        a = t[mask]
        p = mask.bit_count()
        lhs = p * ba
        rhs = bp * a
        if lhs > rhs or (lhs == rhs and p < bp):
            bp, ba, bm = p, a, mask
    return bp, ba, bm


def mwis_solve(n, adj, weights, node_limit):
    """Maximum-weight independent set by branch and bound over bitmasks.

    adj[v] is the neighbor mask of v (no self bit); weights are nonnegative
    ints. Branches on a vertex of maximum degree in the live subproblem
    (smallest id on ties), include branch first. The upper bound is a greedy
    clique cover taken in descending-weight order, so each clique is charged
    its heaviest vertex. Vertices isolated in the subproblem are absorbed
    without branching.

    Returns (best_weight, best_mask, nodes, completed); completed is False
    when node_limit was exhausted, in which case the best-so-far is returned.
    """
    adj = [int(a) for a in adj]
    weights = [int(w) for w in weights]
    order = sorted(range(n), key=lambda v: (-weights[v], v))
    closed = [adj[v] | (1 << v) for v in range(n)]
    state = {"bw": -1, "bm": 0, "nodes": 0, "aborted": False}

    def bound(P):
        cliques = []
        total = 0
        for v in order:
            if not (P >> v) & 1:
                continue
            av = adj[v]
            for i, cm in enumerate(cliques):
                if cm & ~av == 0:
                    cliques[i] = cm | (1 << v)
                    break
            else:
                cliques.append(1 << v)
                total += weights[v]
        return total

    def rec(P, cur_w, cur_mask):
        if state["aborted"]:
            return
        state["nodes"] += 1
        if node_limit is not None and state["nodes"] > node_limit:
            state["aborted"] = True
            return
        iso = 0
        iso_w = 0
        bv = -1
        bd = -1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q ^= low
            d = (adj[v] & P).bit_count()
            if d == 0:
                iso |= low
                iso_w += weights[v]
            elif d > bd:
                bd = d
                bv = v
        cur_w += iso_w
        cur_mask |= iso
        P &= ~iso
        if P == 0:
            if cur_w > state["bw"]:
                state["bw"] = cur_w
                state["bm"] = cur_mask
            return
        if cur_w + bound(P) <= state["bw"]:
            return
        rec(P & ~closed[bv], cur_w + weights[bv], cur_mask | (1 << bv))
        rec(P & ~(1 << bv), cur_w, cur_mask)

    rec((1 << n) - 1, 0, 0)
    return state["bw"], state["bm"], state["nodes"], not state["aborted"]


def greedy_bipartition(indptr, indices):
    """Sequential greedy 2-sides assignment: each vertex takes the side with
    fewer already-placed neighbors (side 0 on ties). Returns a uint8 array."""
    ptr = indptr.tolist()
    ind = indices.tolist()
    n = len(ptr) - 1
    side = bytearray(n)
    placed = bytearray(n)
    for v in range(n):
        s1 = 0
        deg_placed = 0
        for k in range(ptr[v], ptr[v + 1]):
            u = ind[k]
            if placed[u]:
                deg_placed += 1
                s1 += side[u]
        side[v] = 1 if (deg_placed - s1) > s1 else 0
        placed[v] = 1
    return np.frombuffer(bytes(side), dtype=np.uint8).copy()


def maxcut_refine(indptr, indices, side):
    """Single-flip local search for max cut, sweeping vertices in id order
    until no flip gains. Mutates side in place; returns the flip count.
    At the fixpoint every vertex has at most half its neighbors on its own
    side, which forces cut size >= m/2."""
    ptr = indptr.tolist()
    ind = indices.tolist()
    n = len(ptr) - 1
    flips = 0
    changed = True
    while changed:
        changed = False
        for v in range(n):
            sv = side[v]
            same = 0
            deg = ptr[v + 1] - ptr[v]
            for k in range(ptr[v], ptr[v + 1]):
                if side[ind[k]] == sv:
                    same += 1
            if 2 * same > deg:
                side[v] = 1 - sv
                flips += 1
                changed = True
    return flips


def core_peel(indptr, indices, t):
    """Iteratively delete vertices of degree < t; returns a uint8 alive mask.

    The surviving set is the unique maximal induced subgraph with minimum
    degree >= t (possibly empty), independent of deletion order.
    """
    ptr = indptr.tolist()
    ind = indices.tolist()
    n = len(ptr) - 1
    deg = [ptr[v + 1] - ptr[v] for v in range(n)]
    alive = bytearray(b"\x01" * n) if n else bytearray()
    stack = []
    for v in range(n):
        if deg[v] < t:
            alive[v] = 0
            stack.append(v)
    while stack:
        v = stack.pop()
        for k in range(ptr[v], ptr[v + 1]):
            u = ind[k]
            if alive[u]:
                deg[u] -= 1
                if deg[u] < t:
                    alive[u] = 0
                    stack.append(u)
    return np.frombuffer(bytes(alive), dtype=np.uint8).copy()
