"""m-uniform hypergraphs stored as one flag per potential edge, indexed by colex rank."""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path
from typing import Final, NamedTuple

import numpy as np

from pyhyperdense.kernel import EDGE_FLAG_BYTES, MEMORY_CAP, HdException, HdStatus
from pyhyperdense.kernel.combinatorics import (
    SubsetKey,
    binomial,
    colex_rank,
    colex_rank_many,
    colex_unrank_many,
    validate_key,
)
from pyhyperdense.result import Err, Ok, Result, read_text

_HEADER_RE: Final = re.compile(r"^#\s*hypergraph\s+N=(\d+)\s+m=(\d+)\s*$")


def checked_capacity(N: int, m: int, memory_cap: int = MEMORY_CAP) -> int:
    """Number of potential edges C(N, m) after validating the construction parameters.

    Args:
        N:              Vertex count
        m:              Edge arity
        memory_cap:     Byte budget for the edge flags, EDGE_FLAG_BYTES per potential edge

    Raises:
        HdException:    CONSTRUCTION_ERROR on invalid sizes or when the flags would not fit the cap
    """
    if m < 2:
        raise HdException(HdStatus.CONSTRUCTION_ERROR, f"Arity must be at least 2, got m={m}!")
    if m > N:
        raise HdException(HdStatus.CONSTRUCTION_ERROR, f"Arity m={m} exceeds vertex count N={N}!")

    try:
        capacity = binomial(N, m)
    except HdException:
        capacity = None
    if capacity is None or capacity * EDGE_FLAG_BYTES > memory_cap:
        raise HdException(
            HdStatus.CONSTRUCTION_ERROR,
            f"C({N}, {m}) edge flags exceed the memory cap of {memory_cap} bytes!",
        )
    return capacity


class UniformHypergraph:
    """An m-uniform hypergraph on vertices 0..N-1.

    Mutable while it is being built; statistics treat it as read-only and
    never modify it.
    """

    N: int
    """Number of vertices."""
    m: int
    """Edge arity (m >= 2)."""

    def __init__(self, N: int, m: int, memory_cap: int = MEMORY_CAP):
        """Create an empty hypergraph.

        Args:
            N:              Vertex count
            m:              Edge arity, 2 <= m <= N
            memory_cap:     Byte budget for the edge flags (one byte per potential edge)

        Raises:
            HdException:    CONSTRUCTION_ERROR on invalid sizes or when the cap is exceeded
        """
        capacity = checked_capacity(N, m, memory_cap)
        self.N = N
        self.m = m
        self._bits = np.zeros(capacity, dtype=np.bool_)
        self._edges: np.ndarray | None = None

    # Construction helpers

    @classmethod
    def from_bits(cls, N: int, m: int, bits: np.ndarray) -> UniformHypergraph:
        graph = cls(N, m)
        bits = np.asarray(bits, dtype=np.bool_)
        if bits.shape != graph._bits.shape:
            raise HdException(
                HdStatus.CONSTRUCTION_ERROR,
                f"Expected {graph.capacity} edge flags, got {bits.shape}!",
            )
        graph._bits[:] = bits
        return graph

    @classmethod
    def from_edges(cls, N: int, m: int, edges: Iterable[Sequence[int]]) -> UniformHypergraph:
        graph = cls(N, m)
        for edge in edges:
            graph.set_edge(edge)
        return graph

    @classmethod
    def complete(cls, N: int, m: int) -> UniformHypergraph:
        graph = cls(N, m)
        graph._bits[:] = True
        return graph

    def copy(self) -> UniformHypergraph:
        return UniformHypergraph.from_bits(self.N, self.m, self._bits)

    # Properties

    @property
    def capacity(self) -> int:
        """Number of potential edges, C(N, m)."""
        return int(self._bits.shape[0])

    @property
    def bits(self) -> np.ndarray:
        """Read-only view of the edge flags in colex order."""
        view = self._bits.view()
        view.setflags(write=False)
        return view

    # Edge operations

    def _rank(self, key: Sequence[int]) -> int:
        vertices = validate_key(key)
        if len(vertices) != self.m:
            raise HdException(
                HdStatus.INVALID_SUBSET, f"Edge {vertices} does not have arity {self.m}!"
            )
        if vertices[-1] >= self.N:
            raise HdException(
                HdStatus.INVALID_SUBSET, f"Edge {vertices} has a vertex outside [0, {self.N})!"
            )
        return colex_rank(vertices)

    def set_edge(self, key: Sequence[int], present: bool = True) -> None:
        """Add (or remove) an edge.

        Raises:
            HdException:    INVALID_SUBSET for a wrong arity or out-of-range vertex
        """
        self._bits[self._rank(key)] = present
        self._edges = None

    def has_edge(self, key: Sequence[int]) -> bool:
        return bool(self._bits[self._rank(key)])

    def edge_count(self) -> int:
        return int(np.count_nonzero(self._bits))

    def edge_ranks(self) -> np.ndarray:
        return np.flatnonzero(self._bits)

    def edge_array(self) -> np.ndarray:
        """(E, m) int64 array of edges in increasing colex rank."""
        if self._edges is None:
            edges = colex_unrank_many(self.edge_ranks(), self.m, self.N)
            edges.setflags(write=False)
            self._edges = edges
        return self._edges

    def iter_edges(self) -> Iterator[SubsetKey]:
        for row in self.edge_array():
            yield tuple(int(v) for v in row)

    # Vertex queries

    def degree(self, v: int) -> int:
        """Number of edges containing vertex 'v'.

        Raises:
            HdException:    RANGE_ERROR if v is not a vertex
        """
        if not 0 <= v < self.N:
            raise HdException(HdStatus.RANGE_ERROR, f"Vertex {v} is outside [0, {self.N})!")
        return int(self.degrees()[v])

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edge_array().ravel(), minlength=self.N).astype(np.int64)

    def vertex_mask(self, vertices: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.N, dtype=np.bool_)
        chosen = np.fromiter((int(v) for v in vertices), dtype=np.int64)
        if chosen.size and (chosen.min() < 0 or chosen.max() >= self.N):
            raise HdException(
                HdStatus.INVALID_SUBSET, f"Vertex set reaches outside [0, {self.N})!"
            )
        mask[chosen] = True
        return mask

    def edges_within(self, vertices: Iterable[int]) -> int:
        """Number of edges with all vertices in the given set (0 for sets smaller than m)."""
        mask = self.vertex_mask(vertices)
        if np.count_nonzero(mask) < self.m:
            return 0
        return int(np.count_nonzero(np.all(mask[self.edge_array()], axis=1)))

    def relabel(self, permutation: Sequence[int]) -> UniformHypergraph:
        """Image of the hypergraph under the vertex map v -> permutation[v]."""
        perm = np.asarray(permutation, dtype=np.int64)
        if perm.shape != (self.N,) or not np.array_equal(np.sort(perm), np.arange(self.N)):
            raise HdException(HdStatus.INVALID_SUBSET, "Relabeling is not a permutation of the vertices!")

        image = UniformHypergraph(self.N, self.m)
        if self.edge_count():
            moved = np.sort(perm[self.edge_array()], axis=1)
            image._bits[colex_rank_many(moved, self.N)] = True
        return image

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniformHypergraph):
            return NotImplemented
        return self.N == other.N and self.m == other.m and np.array_equal(self._bits, other._bits)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"UniformHypergraph(N={self.N}, m={self.m}, edges={self.edge_count()})"


def new_empty(N: int, m: int, memory_cap: int = MEMORY_CAP) -> UniformHypergraph:
    return UniformHypergraph(N, m, memory_cap)


# Edge-list text format


class EdgeListError(NamedTuple):
    """Reason an edge list could not be parsed."""

    line: int
    """1-based line number (0 when the file itself could not be read)."""
    reason: str
    """Human-readable description."""

    def __str__(self) -> str:
        return f"line {self.line}: {self.reason}" if self.line else self.reason


def format_edge_list(graph: UniformHypergraph) -> str:
    """Render the hypergraph as text with 1-based vertex ids."""
    lines = [f"# hypergraph N={graph.N} m={graph.m}"]
    lines.extend(" ".join(str(v + 1) for v in edge) for edge in graph.iter_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Result[UniformHypergraph, EdgeListError]:
    """Parse the edge-list text format.

    Args:
        text:       File contents

    Returns:
        Result[UniformHypergraph, EdgeListError]:   Hypergraph or the first problem found
    """
    lines = text.splitlines()
    header_idx = next((i for i, line in enumerate(lines) if line.strip()), None)
    if header_idx is None:
        return Err(EdgeListError(1, "missing '# hypergraph N=<N> m=<m>' header"))

    header = _HEADER_RE.match(lines[header_idx].strip())
    if header is None:
        return Err(EdgeListError(header_idx + 1, "malformed header"))

    N, m = int(header.group(1)), int(header.group(2))
    try:
        graph = UniformHypergraph(N, m)
    except HdException as exc:
        return Err(EdgeListError(header_idx + 1, exc.msg or exc.status.name))

    for idx in range(header_idx + 1, len(lines)):
        content = lines[idx].strip()
        if not content:
            continue
        line_no = idx + 1
        try:
            ids = [int(token) for token in content.split()]
        except ValueError:
            return Err(EdgeListError(line_no, f"non-integer vertex id in {content!r}"))
        if len(ids) != m:
            return Err(EdgeListError(line_no, f"expected {m} vertex ids, got {len(ids)}"))
        if min(ids) < 1 or max(ids) > N:
            return Err(EdgeListError(line_no, f"vertex id outside 1..{N}"))
        if any(b <= a for a, b in zip(ids, ids[1:])):
            return Err(EdgeListError(line_no, "vertex ids are not strictly increasing"))

        key = tuple(v - 1 for v in ids)
        if graph.has_edge(key):
            return Err(EdgeListError(line_no, f"duplicate edge {content!r}"))
        graph.set_edge(key)

    return Ok(graph)


def parse_error(err: EdgeListError) -> HdException:
    """Turn a parse failure into the package exception (for 'Result.unwrap')."""
    return HdException(HdStatus.PARSE_ERROR, str(err))


def read_edge_list(path: str | Path) -> Result[UniformHypergraph, EdgeListError]:
    return read_text(path).map_err(lambda msg: EdgeListError(0, msg)) >> parse_edge_list


def write_edge_list(graph: UniformHypergraph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(graph), encoding="utf-8")
