"""Scan statistic (exact, oracle and greedy) and the clique indicator."""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Final, NamedTuple, Optional, Union

import numpy as np

from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import HdException, HdStatus, enumeration_budget
from pyhyperdense.kernel.combinatorics import binomial, colex_rank_many
from pyhyperdense.kernel.revolving_door import swap_chunks
from pyhyperdense.kernel.scan import hill_climb, incidence_arrays, scan_swaps
from pyhyperdense.models import RngStream
from pyhyperdense.statistics.common import StatName, StatValue, check_scan_size

logger = logging.getLogger(__name__)

ORACLE_SUBSET_GUARD: Final[int] = 10**6
DEFAULT_RESTARTS: Final[int] = 4


def _subset_total(N: int, n: int) -> Optional[int]:
    try:
        return binomial(N, n)
    except HdException:
        return None


def hst_stat(graph: UniformHypergraph, n: int, budget: int | None = None) -> StatValue:
    """Exact scan statistic W_n = max over n-subsets S of the edges inside S.

    Subsets are visited in revolving-door order; each step swaps one vertex
    and updates the count by the change in edges through the swapped pair.

    Args:
        graph:          Observed hypergraph
        n:              Scan size, m <= n <= N
        budget:         Maximum number of subsets to visit (default: configured budget)

    Raises:
        HdException:    BUDGET_EXCEEDED if C(N, n) is above the budget

    Returns:
        StatValue:      Exact W_n with a maximizing witness
    """
    check_scan_size(graph, n)
    N = graph.N
    limit = enumeration_budget(budget)
    total = _subset_total(N, n)
    if total is None or total > limit:
        raise HdException(
            HdStatus.BUDGET_EXCEEDED,
            f"Exact scan over C({N}, {n}) subsets exceeds the budget of {limit} visits!",
        )

    inc_ptr, inc_other = incidence_arrays(graph.edge_array(), N)
    in_set = np.zeros(N, dtype=np.bool_)
    in_set[:n] = True
    current = graph.edges_within(range(n))
    best = current
    best_set = in_set.copy()

    for outs, ins in swap_chunks(N, n):
        current, best = scan_swaps(outs, ins, in_set, inc_ptr, inc_other, current, best, best_set)

    witness = tuple(int(v) for v in np.flatnonzero(best_set))
    return StatValue(
        StatName.HST,
        float(best),
        {"W_n": float(best), "subsets": float(total)},
        witness=witness,
    )


def hst_oracle(graph: UniformHypergraph, n: int) -> StatValue:
    """Scan statistic by recounting every n-subset from scratch.

    Raises:
        HdException:    SIZE_GUARD if there are more than 10^6 subsets
    """
    check_scan_size(graph, n)
    total = _subset_total(graph.N, n)
    if total is None or total > ORACLE_SUBSET_GUARD:
        raise HdException(HdStatus.SIZE_GUARD, f"C({graph.N}, {n}) subsets are too many for the oracle!")

    edges = graph.edge_array()
    best = -1
    witness: tuple[int, ...] = ()
    for subset in combinations(range(graph.N), n):
        mask = np.zeros(graph.N, dtype=np.bool_)
        mask[list(subset)] = True
        count = int(np.count_nonzero(np.all(mask[edges], axis=1)))
        if count > best:
            best, witness = count, subset

    return StatValue(StatName.HST, float(best), {"W_n": float(best), "subsets": float(total)}, witness=witness)


def hst_stat_greedy(
    graph: UniformHypergraph,
    n: int,
    restarts: int = DEFAULT_RESTARTS,
    rng: Union[np.random.Generator, RngStream, None] = None,
) -> StatValue:
    """Lower bound on W_n by local search.

    Starts from the n highest-degree vertices and from 'restarts' uniformly
    random n-subsets; each start climbs by the best single-vertex swap until
    no swap adds edges.

    Args:
        graph:          Observed hypergraph
        n:              Scan size, m <= n <= N
        restarts:       Number of random starts besides the degree seed
        rng:            Source of the random starts

    Returns:
        StatValue:      Flagged approximate unless n = N
    """
    check_scan_size(graph, n)
    N = graph.N
    if n == N:
        total = graph.edge_count()
        return StatValue(
            StatName.HST, float(total), {"W_n": float(total), "restarts": 0.0}, witness=tuple(range(N))
        )

    gen = rng.generator() if isinstance(rng, RngStream) else rng
    if gen is None:
        gen = np.random.default_rng(0)

    inc_ptr, inc_other = incidence_arrays(graph.edge_array(), N)
    starts = [np.argsort(-graph.degrees(), kind="stable")[:n]]
    starts.extend(gen.choice(N, size=n, replace=False) for _ in range(restarts))

    best = -1
    witness: tuple[int, ...] = ()
    for start in starts:
        in_set = np.zeros(N, dtype=np.bool_)
        in_set[start] = True
        value = int(hill_climb(in_set, inc_ptr, inc_other, graph.edges_within(start)))
        if value > best:
            best = value
            witness = tuple(int(v) for v in np.flatnonzero(in_set))

    return StatValue(
        StatName.HST,
        float(best),
        {"W_n": float(best), "restarts": float(restarts)},
        approximate=True,
        witness=witness,
    )


class _CliqueSearch:
    """Branch and bound over vertex inclusion.

    A candidate u stays in the pool of a partial clique P only while every
    m-subset of P + {u} containing u is an edge.
    """

    def __init__(self, graph: UniformHypergraph, limit: int):
        self.graph = graph
        self.bits = graph.bits
        self.limit = limit
        self.nodes = 0

    def _visit(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise HdException(
                HdStatus.BUDGET_EXCEEDED,
                f"Clique search exceeded the budget of {self.limit} node visits!",
            )

    def compatible(self, partial: list[int], v: int, pool: np.ndarray) -> np.ndarray:
        """Members of 'pool' that stay compatible once v joins 'partial'."""
        m = self.graph.m
        keep = np.ones(pool.shape[0], dtype=np.bool_)
        for rest in combinations(partial, m - 2):
            if not keep.any():
                break
            base = np.broadcast_to(np.array(rest + (v,), dtype=np.int64), (pool.shape[0], m - 1))
            rows = np.sort(np.column_stack([base, pool]), axis=1)
            keep &= self.bits[colex_rank_many(rows, self.graph.N)]
        return pool[keep]

    def find(self, partial: list[int], pool: np.ndarray, target: int) -> Optional[list[int]]:
        if len(partial) >= target:
            return partial
        for idx in range(pool.shape[0]):
            if len(partial) + pool.shape[0] - idx < target:
                return None
            self._visit()
            v = int(pool[idx])
            found = self.find(partial + [v], self.compatible(partial, v, pool[idx + 1 :]), target)
            if found is not None:
                return found
        return None

    def largest(self, partial: list[int], pool: np.ndarray, best: list[int]) -> list[int]:
        if len(partial) > len(best):
            best = partial
        for idx in range(pool.shape[0]):
            if len(partial) + pool.shape[0] - idx <= len(best):
                break
            self._visit()
            v = int(pool[idx])
            best = self.largest(partial + [v], self.compatible(partial, v, pool[idx + 1 :]), best)
        return best


def _degree_order(graph: UniformHypergraph, min_degree: int = 0) -> np.ndarray:
    degrees = graph.degrees()
    order = np.argsort(-degrees, kind="stable")
    return order[degrees[order] >= min_degree].astype(np.int64)


def hcnt_has_clique(graph: UniformHypergraph, n: int, budget: int | None = None) -> StatValue:
    """Clique indicator: 1 iff some n-subset spans all C(n, m) possible edges.

    Args:
        graph:          Observed hypergraph
        n:              Clique size, m <= n <= N
        budget:         Maximum number of search nodes (default: configured budget)

    Raises:
        HdException:    BUDGET_EXCEEDED when the search grows past the budget

    Returns:
        StatValue:      Value 1.0 with the clique as witness, or 0.0
    """
    check_scan_size(graph, n)
    search = _CliqueSearch(graph, enumeration_budget(budget))
    # A vertex of an n-clique lies in C(n-1, m-1) of its edges.
    pool = _degree_order(graph, binomial(n - 1, graph.m - 1))
    found = search.find([], pool, n)
    logger.debug("clique search for n=%d visited %d nodes", n, search.nodes)

    aux = {"nodes": float(search.nodes)}
    if found is None:
        return StatValue(StatName.HCNT, 0.0, aux)
    return StatValue(StatName.HCNT, 1.0, aux, witness=tuple(sorted(found)))


class CliqueNumber(NamedTuple):
    """Outcome of the exhaustive clique number search."""

    size: int
    """Largest n such that some n-set spans all of its m-subsets as edges."""
    witness: tuple[int, ...]
    """One largest clique."""
    nodes: int
    """Search nodes visited."""


def clique_number(graph: UniformHypergraph, budget: int | None = None) -> CliqueNumber:
    """Exhaustive clique number. Sets with fewer than m vertices are cliques trivially."""
    search = _CliqueSearch(graph, enumeration_budget(budget))
    best = search.largest([], _degree_order(graph), [])
    trivial = min(graph.N, graph.m - 1)
    if len(best) < trivial:
        best = list(range(trivial))
    return CliqueNumber(len(best), tuple(sorted(best)), search.nodes)
