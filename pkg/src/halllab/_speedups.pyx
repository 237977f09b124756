# cython: language_level=3
"""Compiled kernels.

Reference semantics live in halllab._pure; the two modules must produce
identical outputs (including witnesses and tie-breaking). The compiled
versions are restricted to word-sized problems: masks are uint64, so n <= 24
for the subset table and n <= 63 for the branch-and-bound solver.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


def alpha_table_fill(int n, object closed_masks):
    """See halllab._pure.alpha_table_fill."""
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.zeros(size, dtype=np.uint8)
    cdef uint8_t[::1] t = out
    cdef uint64_t closed[64]
    cdef int v
    for v in range(n):
        closed[v] = <uint64_t>int(closed_masks[v])
    cdef Py_ssize_t mask
    cdef uint64_t m, low
    cdef uint8_t a1, a2
    with nogil:
        for mask in range(1, size):
            m = <uint64_t>mask
            low = m & (~m + 1)
            v = __builtin_ctzll(low)
            a1 = t[<Py_ssize_t>(m ^ low)]
            a2 = <uint8_t>(1 + t[<Py_ssize_t>(m & ~closed[v])])
            t[mask] = a1 if a1 >= a2 else a2
    return out


def hall_ratio_scan(object table, int n):
    """See halllab._pure.hall_ratio_scan."""
    arr = np.ascontiguousarray(table, dtype=np.uint8)
    cdef const uint8_t[::1] t = arr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t mask
    cdef long bp = 1, ba = 1, p, a, lhs, rhs
    cdef Py_ssize_t bm = 1
    with nogil:
        for mask in range(2, size):
            a = t[mask]
            p = __builtin_popcountll(<uint64_t>mask)
            lhs = p * ba
            rhs = bp * a
            if lhs > rhs or (lhs == rhs and p < bp):
                bp = p
                ba = a
                bm = mask
    return int(bp), int(ba), int(bm)


cdef class _MWIS:
    cdef uint64_t adj[64]
    cdef uint64_t closed[64]
    cdef uint64_t cliq[64]
    cdef int64_t w[64]
    cdef int order[64]
    cdef int n
    cdef int64_t best_w
    cdef uint64_t best_mask
    cdef long long nodes
    cdef long long limit
    cdef bint aborted

    cdef int64_t bound(self, uint64_t P) nogil:
        cdef int ncl = 0
        cdef int64_t total = 0
        cdef int i, k, v
        cdef uint64_t av
        cdef bint placed
        for i in range(self.n):
            v = self.order[i]
            if not (P >> v) & 1:
                continue
            av = self.adj[v]
            placed = False
            for k in range(ncl):
                if self.cliq[k] & ~av == 0:
                    self.cliq[k] = self.cliq[k] | ((<uint64_t>1) << v)
                    placed = True
                    break
            if not placed:
                self.cliq[ncl] = (<uint64_t>1) << v
                ncl += 1
                total += self.w[v]
        return total

    cdef void rec(self, uint64_t P, int64_t cur_w, uint64_t cur_mask) nogil:
        cdef uint64_t iso = 0, Q = P, low
        cdef int64_t iso_w = 0
        cdef int bv = -1, bd = -1, v, d
        if self.aborted:
            return
        self.nodes += 1
        if self.limit >= 0 and self.nodes > self.limit:
            self.aborted = True
            return
        while Q:
            low = Q & (~Q + 1)
            v = __builtin_ctzll(low)
            Q ^= low
            d = __builtin_popcountll(self.adj[v] & P)
            if d == 0:
                iso |= low
                iso_w += self.w[v]
            elif d > bd:
                bd = d
                bv = v
        cur_w += iso_w
        cur_mask |= iso
        P &= ~iso
        if P == 0:
            if cur_w > self.best_w:
                self.best_w = cur_w
                self.best_mask = cur_mask
            return
        if cur_w + self.bound(P) <= self.best_w:
            return
        self.rec(P & ~self.closed[bv], cur_w + self.w[bv],
                 cur_mask | ((<uint64_t>1) << bv))
        self.rec(P & ~((<uint64_t>1) << bv), cur_w, cur_mask)


def mwis_solve(int n, object adj, object weights, object node_limit):
    """See halllab._pure.mwis_solve. Requires n <= 63 and int64 weights."""
    if n > 63:
        raise ValueError("compiled solver is limited to n <= 63")
    cdef _MWIS s = _MWIS()
    cdef int v
    s.n = n
    for v in range(n):
        s.adj[v] = <uint64_t>int(adj[v])
        s.closed[v] = s.adj[v] | ((<uint64_t>1) << v)
        s.w[v] = <int64_t>int(weights[v])
    order = sorted(range(n), key=lambda u: (-int(weights[u]), u))
    for v in range(n):
        s.order[v] = order[v]
    s.best_w = -1
    s.best_mask = 0
    s.nodes = 0
    s.limit = -1 if node_limit is None else <long long>int(node_limit)
    s.aborted = False
    cdef uint64_t full = 0 if n == 0 else ((<uint64_t>1) << n) - 1 if n < 64 else ~(<uint64_t>0)
    with nogil:
        s.rec(full, 0, 0)
    return int(s.best_w), int(s.best_mask), int(s.nodes), not s.aborted


def greedy_bipartition(object indptr, object indices):
    """See halllab._pure.greedy_bipartition."""
    cdef const int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ind = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    out = np.zeros(n, dtype=np.uint8)
    placed_arr = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] side = out
    cdef uint8_t[::1] placed = placed_arr
    cdef Py_ssize_t v, k
    cdef int64_t u
    cdef long s1, deg_placed
    with nogil:
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
    return out


def maxcut_refine(object indptr, object indices, object side_arr):
    """See halllab._pure.maxcut_refine. Mutates side_arr in place."""
    cdef const int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ind = np.ascontiguousarray(indices, dtype=np.int64)
    cdef uint8_t[::1] side = side_arr
    cdef Py_ssize_t n = ptr.shape[0] - 1
    cdef Py_ssize_t v, k
    cdef long same, deg, flips = 0
    cdef uint8_t sv
    cdef bint changed = True
    with nogil:
        while changed:
            changed = False
            for v in range(n):
                sv = side[v]
                same = 0
                deg = <long>(ptr[v + 1] - ptr[v])
                for k in range(ptr[v], ptr[v + 1]):
                    if side[ind[k]] == sv:
                        same += 1
                if 2 * same > deg:
                    side[v] = 1 - sv
                    flips += 1
                    changed = True
    return int(flips)


def core_peel(object indptr, object indices, long t):
    """See halllab._pure.core_peel."""
    cdef const int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ind = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    alive_arr = np.ones(n, dtype=np.uint8)
    deg_arr = np.zeros(n, dtype=np.int64)
    stack_arr = np.zeros(n if n else 1, dtype=np.int64)
    cdef uint8_t[::1] alive = alive_arr
    cdef int64_t[::1] deg = deg_arr
    cdef int64_t[::1] stack = stack_arr
    cdef Py_ssize_t v, k, top = 0
    cdef int64_t u
    with nogil:
        for v in range(n):
            deg[v] = ptr[v + 1] - ptr[v]
            if deg[v] < t:
                alive[v] = 0
                stack[top] = v
                top += 1
        while top > 0:
            top -= 1
            v = <Py_ssize_t>stack[top]
            for k in range(ptr[v], ptr[v + 1]):
                u = ind[k]
                if alive[u]:
                    deg[u] -= 1
                    if deg[u] < t:
                        alive[u] = 0
                        stack[top] = u
                        top += 1
        # stack never overflows: each vertex is pushed at most once
    return alive_arr
