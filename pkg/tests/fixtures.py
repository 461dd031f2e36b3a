from __future__ import annotations

from collections.abc import Generator, Mapping
from itertools import combinations
from typing import Final

import numpy as np
import pytest

from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import BUDGET_ENV_VAR
from pyhyperdense.models import NullModel, RngStream, sample_null

BINOMIAL_CASES: Final[Mapping[tuple[int, int], int]] = {
    (10, 2): 45,
    (5, 0): 1,
    (3, 5): 0,
    (20, 10): 184756,
    (400, 2): 79800,
}

FALLING_CASES: Final[Mapping[tuple[int, int], int]] = {
    (9, 2): 72,
    (4, 0): 1,
    (3, 4): 0,
    (30, 4): 657720,
}

KL_CASES: Final[Mapping[tuple[float, float], float]] = {
    (0.5, 0.5): 0.0,
    (0.5, 1.0): 0.6931471805599453,
    (0.1, 0.5): 0.5108256237659907,
    (0.2, 0.8): 0.8317766166719343,
}

PATH_T2_VALUE: Final[float] = -1.224745
P0_PRIME_10_2_4: Final[float] = 0.107692307692


def random_graph(N: int, m: int, p: float, seed: int, stream_id: int = 0) -> UniformHypergraph:
    return sample_null(NullModel(N, m, p), RngStream(seed, stream_id))


def subsets_in_colex_order(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(n), k), key=lambda s: s[::-1])


@pytest.fixture
def path_graph() -> UniformHypergraph:
    """m = 2 path 0 - 1 - 2."""
    return UniformHypergraph.from_edges(3, 2, [(0, 1), (1, 2)])


@pytest.fixture
def triangle() -> UniformHypergraph:
    return UniformHypergraph.complete(3, 2)


@pytest.fixture
def complete_5_3() -> UniformHypergraph:
    return UniformHypergraph.complete(5, 3)


@pytest.fixture
def empty_6_3() -> UniformHypergraph:
    return UniformHypergraph(6, 3)


@pytest.fixture
def seeded_graphs() -> list[UniformHypergraph]:
    """Small random instances of varying size, arity and density."""
    rng = np.random.default_rng(2024)
    graphs = []
    for idx in range(24):
        N = int(rng.integers(5, 11))
        m = int(rng.integers(2, 4))
        p = float(rng.uniform(0.15, 0.85))
        graphs.append(random_graph(N, m, p, seed=11, stream_id=idx))
    return graphs


@pytest.fixture
def no_budget_env(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    yield
