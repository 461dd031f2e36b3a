"""Compiled kernels for subset edge counting.

Edges are handed to the kernels as a CSR incidence structure: for every
vertex v, rows inc_other[inc_ptr[v]:inc_ptr[v + 1]] list the other m - 1
vertices of each edge containing v.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def incidence_arrays(edges: np.ndarray, n_vertices: int) -> tuple[np.ndarray, np.ndarray]:
    """Build the (inc_ptr, inc_other) pair from an (E, m) edge array."""
    n_edges, arity = edges.shape
    if n_edges == 0:
        return np.zeros(n_vertices + 1, dtype=np.int64), np.empty((0, arity - 1), dtype=np.int64)

    owners = np.concatenate([edges[:, j] for j in range(arity)])
    others = np.concatenate([np.delete(edges, j, axis=1) for j in range(arity)])
    order = np.argsort(owners, kind="stable")

    inc_ptr = np.zeros(n_vertices + 1, dtype=np.int64)
    np.cumsum(np.bincount(owners, minlength=n_vertices), out=inc_ptr[1:])
    return inc_ptr, np.ascontiguousarray(others[order], dtype=np.int64)


@njit(cache=True, nogil=True)
def inside_count(vertex, in_set, inc_ptr, inc_other):
    """Number of edges through 'vertex' whose other vertices are all in the set."""
    count = 0
    width = inc_other.shape[1]
    for row in range(inc_ptr[vertex], inc_ptr[vertex + 1]):
        inside = True
        for j in range(width):
            if not in_set[inc_other[row, j]]:
                inside = False
                break
        if inside:
            count += 1
    return count


@njit(cache=True, nogil=True)
def scan_swaps(outs, ins, in_set, inc_ptr, inc_other, current, best, best_set):
    """Apply swaps to 'in_set' and track the running and best edge counts.

    'in_set' and 'best_set' are updated in place; returns (current, best).
    """
    for step in range(outs.shape[0]):
        removed = outs[step]
        added = ins[step]
        current -= inside_count(removed, in_set, inc_ptr, inc_other)
        in_set[removed] = False
        current += inside_count(added, in_set, inc_ptr, inc_other)
        in_set[added] = True
        if current > best:
            best = current
            best_set[:] = in_set
    return current, best


@njit(cache=True, nogil=True)
def hill_climb(in_set, inc_ptr, inc_other, current):
    """Best single-vertex swap local search; returns the final edge count."""
    n_vertices = in_set.shape[0]
    improved = True
    while improved:
        improved = False
        for u in range(n_vertices):
            if not in_set[u]:
                continue
            loss = inside_count(u, in_set, inc_ptr, inc_other)
            in_set[u] = False
            best_gain = 0
            best_v = -1
            for v in range(n_vertices):
                if in_set[v] or v == u:
                    continue
                gain = inside_count(v, in_set, inc_ptr, inc_other) - loss
                if gain > best_gain:
                    best_gain = gain
                    best_v = v
            if best_v >= 0:
                in_set[best_v] = True
                current += best_gain
                improved = True
            else:
                in_set[u] = True
    return current
