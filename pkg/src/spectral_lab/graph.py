"""Immutable simple undirected graphs.

Vertices are ``0..n-1``. A :class:`Graph` stores, for each vertex, the sorted
tuple of its neighbours; edge surgery (:func:`delete_edge`, :func:`add_edge`)
returns a new graph and never touches the input.

The plain-text exchange format is::

    <n> <m>
    <u> <v>        # m lines, 0 <= u < v < n, single space, LF endings

with no comments or blank lines.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import sparse

from .errors import (
    DuplicateEdge,
    EdgeExists,
    GraphError,
    GraphFormatError,
    NoSuchEdge,
    SelfLoop,
    VertexOutOfRange,
)

# above this size the all-pairs BFS switches from dense frontier matrices to
# one queue-based BFS per source
_DENSE_BFS_LIMIT = 2048


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphError("adjacency must have one entry per vertex")
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if v == u:
                    raise SelfLoop(u)
                if not 0 <= v < self.n:
                    raise VertexOutOfRange(f"vertex {v} not in [0, {self.n})")
                if v <= prev:
                    raise GraphError(f"neighbours of {u} not strictly sorted")
                prev = v
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not _contains(self.adjacency[v], u):
                    raise GraphError(f"asymmetric adjacency: {u}->{v}")

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(self, u)
        _check_vertex(self, v)
        return _contains(self.adjacency[u], v)

    def non_edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            nbrs = set(self.adjacency[u])
            for v in range(u + 1, self.n):
                if v not in nbrs:
                    yield u, v

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """Adjacency matrix as float64 CSR (cached; treat as read-only)."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum([len(a) for a in self.adjacency], out=indptr[1:])
        indices = np.fromiter(
            (v for a in self.adjacency for v in a), dtype=np.int64, count=int(indptr[-1])
        )
        data = np.ones(len(indices), dtype=np.float64)
        return sparse.csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _contains(sorted_tuple: Sequence[int], v: int) -> bool:
    lo, hi = 0, len(sorted_tuple)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_tuple[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(sorted_tuple) and sorted_tuple[lo] == v


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise VertexOutOfRange(f"vertex {v} not in [0, {g.n})")


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical graph on ``n`` vertices.

    Raises SelfLoop, DuplicateEdge (either orientation) or VertexOutOfRange.
    """
    if n < 0:
        raise GraphError("n must be nonnegative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge {{{u},{v}}} has a vertex outside [0, {n})")
        if u == v:
            raise SelfLoop(u)
        if v in nbrs[u]:
            raise DuplicateEdge(u, v)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int
    min_degree: int

    @property
    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree


def degree_profile(g: Graph) -> DegreeProfile:
    degs = tuple(len(a) for a in g.adjacency)
    if not degs:
        return DegreeProfile((), 0, 0)
    return DegreeProfile(degs, max(degs), min(degs))


def bfs_distances(g: Graph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get ``math.inf``."""
    _check_vertex(g, source)
    dist: list = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.adjacency[u]:
            if dist[v] == math.inf:
                dist[v] = du
                queue.append(v)
    return dist


@dataclass(frozen=True)
class DistanceSummary:
    connected: bool
    # None when the graph is disconnected (or has no vertices)
    diameter: int | None
    eccentricities: tuple


def _all_pairs_levels(g: Graph) -> np.ndarray:
    """Distance matrix by level-synchronous BFS from every vertex at once.

    Unreachable pairs are -1.
    """
    n = g.n
    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    frontier = np.eye(n, dtype=np.float64)
    reached = np.eye(n, dtype=bool)
    a = g.csr
    level = 0
    while frontier.any():
        level += 1
        grown = (a @ frontier) > 0
        new = grown & ~reached
        dist[new] = level
        reached |= new
        frontier = new.astype(np.float64)
    return dist


def distance_summary(g: Graph) -> DistanceSummary:
    n = g.n
    if n == 0:
        return DistanceSummary(False, None, ())
    if n <= _DENSE_BFS_LIMIT:
        dist = _all_pairs_levels(g)
        if (dist < 0).any():
            return DistanceSummary(False, None, tuple([math.inf] * n))
        ecc = tuple(int(e) for e in dist.max(axis=1))
    else:
        ecc_list = []
        for s in range(n):
            d = bfs_distances(g, s)
            e = max(d)
            if e == math.inf:
                return DistanceSummary(False, None, tuple([math.inf] * n))
            ecc_list.append(e)
        ecc = tuple(ecc_list)
    return DistanceSummary(True, max(ecc), ecc)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return math.inf not in bfs_distances(g, 0)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise NoSuchEdge(f"edge {{{u},{v}}} not in graph")
    adj = list(g.adjacency)
    adj[u] = tuple(w for w in adj[u] if w != v)
    adj[v] = tuple(w for w in adj[v] if w != u)
    return Graph(g.n, tuple(adj))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise SelfLoop(u)
    if g.has_edge(u, v):
        raise EdgeExists(f"edge {{{u},{v}}} already present")
    adj = list(g.adjacency)
    adj[u] = tuple(sorted(adj[u] + (v,)))
    adj[v] = tuple(sorted(adj[v] + (u,)))
    return Graph(g.n, tuple(adj))


# --- file format -----------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path) -> None:
    Path(path).write_bytes(format_graph(g).encode("ascii"))


def _parse_ints(text: str, lineno: int, what: str) -> tuple[int, int]:
    parts = text.split(" ")
    if len(parts) != 2 or not all(p.isdigit() and p.isascii() for p in parts):
        raise GraphFormatError(lineno, f"expected '{what}' as two single-space separated integers")
    return int(parts[0]), int(parts[1])


def parse_graph(text: str) -> Graph:
    """Parse the text format; every violation names its 1-based line."""
    if "\r" in text:
        raise GraphFormatError(text[: text.index("\r")].count("\n") + 1, "CR found; LF line endings required")
    if not text:
        raise GraphFormatError(1, "empty file; expected '<n> <m>' header")
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError(1, "missing '<n> <m>' header")
    n, m = _parse_ints(lines[0], 1, "<n> <m>")
    if n < 1:
        raise GraphFormatError(1, "vertex count must be positive")
    if len(lines) - 1 != m:
        # first missing line, or first surplus line
        bad = len(lines) + 1 if len(lines) - 1 < m else m + 2
        raise GraphFormatError(bad, f"header declares {m} edges, found {len(lines) - 1} edge lines")
    seen: set[tuple[int, int]] = set()
    edges = []
    for i, line in enumerate(lines[1:], start=2):
        u, v = _parse_ints(line, i, "<u> <v>")
        if not u < v:
            raise GraphFormatError(i, "edge endpoints must satisfy u < v")
        if v >= n:
            raise GraphFormatError(i, f"vertex {v} out of range for n={n}")
        if (u, v) in seen:
            raise GraphFormatError(i, f"duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    return build_graph(n, edges)


def read_graph(path) -> Graph:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(raw[: exc.start].count(b"\n") + 1, "non-ASCII byte") from None
    return parse_graph(text)
