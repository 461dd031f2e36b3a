"""Revolving-door (minimal change) enumeration of k-subsets.

The order is defined recursively by

    R(n, k) = R(n - 1, k), then reversed(R(n - 1, k - 1)) with n - 1 added

and starts at {0, .., k - 1}. Consecutive subsets differ by removing one
vertex and adding another, so the sequence is emitted as swap pairs.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from functools import lru_cache
from typing import Final

import numpy as np

SwapChunk = tuple[np.ndarray, np.ndarray]

SWAP_CHUNK: Final[int] = 1 << 16
"""Number of swaps handed to the scan kernel at once."""

CACHE_LIMIT: Final[int] = 1 << 22
"""Sequences with at most this many subsets are materialized and cached."""

_SWAP: Final[int] = -1


def _junction(n: int, k: int) -> tuple[int, int]:
    # Swap between the last set of R(n - 1, k) and the last set of R(n - 1, k - 1) + {n - 1}
    if k >= 2:
        return k - 2, n - 1
    return n - 2, n - 1


def revolving_door_swaps(n_items: int, k: int, chunk: int = SWAP_CHUNK) -> Iterator[SwapChunk]:
    """Stream the swaps of the revolving-door order of k-subsets of [0, n_items).

    Args:
        n_items:    Ground set size
        k:          Subset size
        chunk:      Maximum number of swaps per yielded chunk

    Yields:
        SwapChunk:  (removed vertices, added vertices) as int32 arrays
    """
    if k <= 0 or k >= n_items:
        return

    outs = np.empty(chunk, dtype=np.int32)
    ins = np.empty(chunk, dtype=np.int32)
    fill = 0

    # Explicit stack: (n, k, reversed) for subtrees, (_SWAP, out, in) for swaps.
    stack: list[tuple[int, int, int]] = [(n_items, k, 0)]
    while stack:
        first, second, third = stack.pop()
        if first == _SWAP:
            outs[fill] = second
            ins[fill] = third
            fill += 1
            if fill == chunk:
                yield outs.copy(), ins.copy()
                fill = 0
            continue

        n, kk, rev = first, second, third
        if kk == 0 or kk == n:
            continue
        j_out, j_in = _junction(n, kk)
        if rev:
            stack.append((n - 1, kk, 1))
            stack.append((_SWAP, j_in, j_out))
            stack.append((n - 1, kk - 1, 0))
        else:
            stack.append((n - 1, kk - 1, 1))
            stack.append((_SWAP, j_out, j_in))
            stack.append((n - 1, kk, 0))

    if fill:
        yield outs[:fill].copy(), ins[:fill].copy()


@lru_cache(maxsize=8)
def _materialized(n_items: int, k: int) -> SwapChunk:
    parts = list(revolving_door_swaps(n_items, k))
    if not parts:
        empty = np.empty(0, dtype=np.int32)
        return empty, empty
    outs = np.concatenate([p[0] for p in parts])
    ins = np.concatenate([p[1] for p in parts])
    outs.setflags(write=False)
    ins.setflags(write=False)
    return outs, ins


def swap_chunks(n_items: int, k: int) -> Iterator[SwapChunk]:
    """Like 'revolving_door_swaps', but served from a cache for small sequences."""
    if math.comb(n_items, k) <= CACHE_LIMIT:
        yield _materialized(n_items, k)
    else:
        yield from revolving_door_swaps(n_items, k)
