"""Degree based statistics: total degree and the loose 2-path statistic."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.kernel.combinatorics import binomial
from pyhyperdense.statistics.common import StatName, StatValue


class V2Denominator(Enum):
    """Normalizer of the vertex star sum of squares V2."""

    FACTORIAL = "factorial"
    """N - m! (default)."""
    LINEAR = "linear"
    """N - m."""
    CENTERED = "centered"
    """(m - 1)! * (N - m); makes E V2 = E V1 exact under the null for every m."""

    def value(self, N: int, m: int) -> int:
        if self is V2Denominator.FACTORIAL:
            return N - math.factorial(m)
        if self is V2Denominator.LINEAR:
            return N - m
        return math.factorial(m - 1) * (N - m)


def htdt_stat(graph: UniformHypergraph) -> StatValue:
    """Total degree W: the number of edges."""
    total = graph.edge_count()
    return StatValue(StatName.HTDT, float(total), {"W": float(total)})


def p0_hat(graph: UniformHypergraph) -> float:
    """Estimated edge rate: edge count over C(N, m)."""
    return graph.edge_count() / graph.capacity


def vertex_star_count(graph: UniformHypergraph, v: int) -> int:
    """Ordered count of edges through v: (m - 1)! * degree(v)."""
    return math.factorial(graph.m - 1) * graph.degree(v)


def loose_2path_moments(
    graph: UniformHypergraph, p: float, denominator: V2Denominator
) -> tuple[float, float]:
    """(V1, V2) evaluated at edge rate p.

    Raises:
        HdException:    DOMAIN_ERROR if the chosen V2 denominator is not positive
    """
    N, m = graph.N, graph.m
    den = denominator.value(N, m)
    if den <= 0:
        raise HdException(
            HdStatus.DOMAIN_ERROR,
            f"V2 denominator ({denominator.value}) is {den} for N={N}, m={m}; it must be positive!",
        )

    fact = math.factorial(m - 1)
    star_mean = fact * binomial(N - 1, m - 1) * p
    total = binomial(N, m)

    v1 = fact * binomial(N - 1, m - 1) * (total / (total - 1)) * p * (1.0 - p)
    stars = fact * graph.degrees().astype(np.float64)
    v2 = math.fsum(((stars - star_mean) ** 2).tolist()) / den
    return v1, v2


def hl2pt_stat(
    graph: UniformHypergraph,
    p0: float | None = None,
    denominator: V2Denominator = V2Denominator.FACTORIAL,
) -> StatValue:
    """Loose 2-path statistic (V2 - V1) / (N^((2m-3)/2) * p).

    Args:
        graph:          Observed hypergraph
        p0:             Known edge rate to use instead of the estimate (optional)
        denominator:    Normalizer of V2

    Raises:
        HdException:    DOMAIN_ERROR when the V2 denominator is not positive or p0 is out of (0, 1)

    Returns:
        StatValue:      Degenerate (value 0) if the rate used is 0 or 1
    """
    N, m = graph.N, graph.m
    estimate = p0_hat(graph)
    if p0 is not None and not 0.0 < p0 < 1.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Known edge rate p0={p0} must lie in (0, 1)!")
    p = estimate if p0 is None else p0

    v1, v2 = loose_2path_moments(graph, p, denominator)
    aux = {"p0_hat": estimate, "p0": p, "V1": v1, "V2": v2}
    if p <= 0.0 or p >= 1.0:
        return StatValue(StatName.HL2PT, 0.0, aux, degenerate=True)

    value = (v2 - v1) / (N ** ((2 * m - 3) / 2) * p)
    return StatValue(StatName.HL2PT, value, aux)
