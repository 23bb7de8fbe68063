"""Compiled graph kernels (BFS distance sums, component labels, triangles).

Adjacency is CSR-like: ``indptr``/``indices`` with neighbor lists sorted
ascending.  Kept separate so the jit cache warms once per process.
"""

import numba
import numpy as np


@numba.njit(cache=True, parallel=True)
def bfs_distance_sums(indptr, indices, n):
    """Per-source sums of shortest-path lengths and per-source reach counts."""
    totals = np.zeros(n, np.int64)
    reached = np.zeros(n, np.int64)
    for s in numba.prange(n):
        dist = np.full(n, -1, np.int32)
        queue = np.empty(n, np.int32)
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        subtotal = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[v] < 0:
                    dist[v] = du + 1
                    subtotal += du + 1
                    queue[tail] = v
                    tail += 1
        totals[s] = subtotal
        reached[s] = tail
    return totals, reached


@numba.njit(cache=True)
def component_labels(indptr, indices, n):
    """Connected-component label per node and the component count."""
    labels = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    comp = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = comp
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if labels[v] < 0:
                    labels[v] = comp
                    queue[tail] = v
                    tail += 1
        comp += 1
    return labels, comp


@numba.njit(cache=True, parallel=True)
def ordered_closed_triples(indptr, indices, n):
    """Per-node count of ordered neighbor pairs (j, k) that are themselves
    linked; equals twice the triangle count through the node."""
    out = np.zeros(n, np.int64)
    for i in numba.prange(n):
        cnt = 0
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            a, ea = indptr[i], indptr[i + 1]
            b, eb = indptr[j], indptr[j + 1]
            while a < ea and b < eb:
                x = indices[a]
                y = indices[b]
                if x == y:
                    cnt += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
        out[i] = cnt
    return out
