"""Tight and loose 2-path counts and the tight 2-path statistic.

A tight 2-path is an ordered (m+1)-tuple of distinct vertices whose first m
and last m entries are both edges; the two edges share the core formed by
positions 2..m.
"""

from __future__ import annotations

import math
from enum import Enum
from itertools import permutations
from typing import Final

import numpy as np

from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.kernel.combinatorics import binomial, colex_rank_many, falling_factorial
from pyhyperdense.statistics.common import StatName, StatValue
from pyhyperdense.statistics.degree import p0_hat

ORACLE_TUPLE_GUARD: Final[int] = 10**8
PAIR_GUARD: Final[int] = 20_000


class T2Scaling(Enum):
    """Normalization of the tight 2-path numerator."""

    DISPLAYED = "displayed"
    """Num / sqrt((m+1)! C(N, m+1) p^2 (1-p)^2); null variance 2 (m-1)!."""
    STANDARDIZED = "standardized"
    """Bias-corrected for the estimated rate and rescaled to unit null variance."""


def core_counts(graph: UniformHypergraph) -> np.ndarray:
    """c_D for every (m-1)-subset D in colex order: the number of edges containing D."""
    N, m = graph.N, graph.m
    n_cores = binomial(N, m - 1)
    edges = graph.edge_array()
    if edges.shape[0] == 0:
        return np.zeros(n_cores, dtype=np.int64)

    # Dropping one entry of an increasing row keeps it increasing.
    cores = np.concatenate([np.delete(edges, j, axis=1) for j in range(m)])
    return np.bincount(colex_rank_many(cores, N), minlength=n_cores).astype(np.int64)


def ht2pt_numerator(graph: UniformHypergraph, p: float) -> float:
    """Centered tight 2-path sum via shared cores.

    Num = (m-1)! * sum_D [(sum_u a_{D+u})^2 - sum_u a_{D+u}^2], with a_e = A_e - p.
    """
    m = graph.m
    counts = core_counts(graph).astype(np.float64)
    free = graph.N - m + 1
    linear = counts - free * p
    square = counts * (1.0 - p) ** 2 + (free - counts) * p**2
    return math.factorial(m - 1) * math.fsum((linear * linear - square).tolist())


def ht2pt_numerator_oracle(graph: UniformHypergraph, p: float) -> float:
    """Centered tight 2-path sum by enumerating every ordered (m+1)-tuple.

    Raises:
        HdException:    SIZE_GUARD if there are more than 10^8 ordered tuples
    """
    N, m = graph.N, graph.m
    if falling_factorial(N, m + 1) > ORACLE_TUPLE_GUARD:
        raise HdException(
            HdStatus.SIZE_GUARD, f"Too many ordered {m + 1}-tuples on {N} vertices for the oracle!"
        )

    edges = set(graph.iter_edges())
    terms = []
    for tup in permutations(range(N), m + 1):
        head = 1.0 if tuple(sorted(tup[:m])) in edges else 0.0
        tail = 1.0 if tuple(sorted(tup[1:])) in edges else 0.0
        terms.append((head - p) * (tail - p))
    return math.fsum(terms)


def tight_2path_count(graph: UniformHypergraph) -> int:
    """Raw ordered count sum A_{i1..im} A_{i2..im+1} over distinct tuples."""
    counts = core_counts(graph)
    return math.factorial(graph.m - 1) * int(np.sum(counts * (counts - 1)))


def tight_2path_pairs(graph: UniformHypergraph) -> int:
    """Unordered pairs of edges sharing exactly m - 1 vertices."""
    counts = core_counts(graph)
    return int(np.sum(counts * (counts - 1) // 2))


def loose_2path_pairs(graph: UniformHypergraph) -> int:
    """Unordered pairs of edges sharing exactly one vertex.

    Raises:
        HdException:    SIZE_GUARD for graphs with more than 20000 edges
    """
    edges = graph.edge_array()
    n_edges = edges.shape[0]
    if n_edges > PAIR_GUARD:
        raise HdException(HdStatus.SIZE_GUARD, f"{n_edges} edges are too many for pair counting!")
    if n_edges < 2:
        return 0

    incidence = np.zeros((n_edges, graph.N), dtype=np.int64)
    np.put_along_axis(incidence, edges, 1, axis=1)
    overlap = incidence @ incidence.T
    upper = np.triu_indices(n_edges, k=1)
    return int(np.count_nonzero(overlap[upper] == 1))


def ht2pt_stat(graph: UniformHypergraph, scaling: T2Scaling = T2Scaling.DISPLAYED) -> StatValue:
    """Tight 2-path statistic with the estimated edge rate.

    Args:
        graph:          Observed hypergraph
        scaling:        Normalization of the numerator

    Raises:
        HdException:    DOMAIN_ERROR when N < m + 1

    Returns:
        StatValue:      Degenerate (value 0) for empty or complete graphs
    """
    N, m = graph.N, graph.m
    if N < m + 1:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Tight 2-paths need N >= m + 1, got N={N}, m={m}!")

    p = p0_hat(graph)
    if p <= 0.0 or p >= 1.0:
        return StatValue(StatName.HT2PT, 0.0, {"p0_hat": p}, degenerate=True)

    numerator = ht2pt_numerator(graph, p)
    tuples = float(falling_factorial(N, m + 1))
    spread = p * (1.0 - p)

    if scaling is T2Scaling.DISPLAYED:
        denominator = math.sqrt(tuples) * spread
    else:
        numerator += tuples * spread / (graph.capacity - 1)
        denominator = math.sqrt(2.0 * math.factorial(m - 1) * tuples) * spread

    return StatValue(
        StatName.HT2PT,
        numerator / denominator,
        {"p0_hat": p, "numerator": numerator, "denominator": denominator},
    )
