"""Signed directed interaction graphs.

Nodes are dense integer indices ``0..n-1``.  An edge ``(j, k, w)`` means node
``j`` acts on node ``k`` with strength ``w``: positive weights promote, negative
weights repress.  A zero weight would mean "neutral" and is represented by the
absence of an edge.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SignedDigraph",
    "DegreeStats",
    "build_graph",
    "clean",
    "degree_stats",
    "weak_components",
]


def _csr(keys: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Group edge indices by ``keys`` (stable), returning ``(ptr, index)``."""
    order = np.argsort(keys, kind="stable").astype(np.int64)
    counts = np.bincount(keys, minlength=n)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, order


@dataclass(frozen=True, eq=False)
class SignedDigraph:
    """Immutable signed digraph stored as parallel edge arrays plus CSR adjacency.

    Use :func:`build_graph` to construct one; it validates the edges.
    """

    node_count: int
    sources: np.ndarray
    targets: np.ndarray
    weights: np.ndarray
    out_ptr: np.ndarray = field(repr=False)
    out_edges: np.ndarray = field(repr=False)
    in_ptr: np.ndarray = field(repr=False)
    in_edges: np.ndarray = field(repr=False)

    @property
    def edge_count(self) -> int:
        return int(self.sources.shape[0])

    def edges(self) -> list[tuple[int, int, float]]:
        return [
            (int(s), int(t), float(w))
            for s, t, w in zip(self.sources, self.targets, self.weights)
        ]

    def out_edge_ids(self, node: int) -> np.ndarray:
        return self.out_edges[self.out_ptr[node] : self.out_ptr[node + 1]]

    def in_edge_ids(self, node: int) -> np.ndarray:
        return self.in_edges[self.in_ptr[node] : self.in_ptr[node + 1]]

    def out_degree(self, node: int) -> int:
        return int(self.out_ptr[node + 1] - self.out_ptr[node])

    def in_degree(self, node: int) -> int:
        return int(self.in_ptr[node + 1] - self.in_ptr[node])

    def has_self_loops(self) -> bool:
        return bool(np.any(self.sources == self.targets))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self.sources, other.sources)
            and np.array_equal(self.targets, other.targets)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class DegreeStats:
    avg_neighbors: float
    max_degree: int
    degree_histogram: dict[int, int]


def _from_arrays(
    n: int, src: np.ndarray, dst: np.ndarray, w: np.ndarray
) -> SignedDigraph:
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    for arr in (src, dst, w):
        arr.setflags(write=False)
    out_ptr, out_edges = _csr(src, n)
    in_ptr, in_edges = _csr(dst, n)
    for arr in (out_ptr, out_edges, in_ptr, in_edges):
        arr.setflags(write=False)
    return SignedDigraph(n, src, dst, w, out_ptr, out_edges, in_ptr, in_edges)


def build_graph(
    n: int, edges: Iterable[Sequence[float]] | np.ndarray
) -> SignedDigraph:
    """Build a graph on ``n`` nodes from ``(source, target, weight)`` triples.

    Edge order is preserved.  Raises ``ValueError`` for out-of-range indices
    and for zero or non-finite weights.
    """
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    if isinstance(edges, np.ndarray) and edges.ndim == 2:
        src = edges[:, 0].astype(np.int64)
        dst = edges[:, 1].astype(np.int64)
        w = edges[:, 2].astype(np.float64)
    else:
        triples = list(edges)
        m = len(triples)
        src = np.fromiter((e[0] for e in triples), dtype=np.int64, count=m)
        dst = np.fromiter((e[1] for e in triples), dtype=np.int64, count=m)
        w = np.fromiter((e[2] for e in triples), dtype=np.float64, count=m)
    bad = (src < 0) | (src >= n) | (dst < 0) | (dst >= n)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ValueError(f"edge {i} ({src[i]}, {dst[i]}) has an index outside [0, {n})")
    if not np.all(np.isfinite(w)):
        raise ValueError("edge weights must be finite")
    if np.any(w == 0):
        raise ValueError("edge weights must be nonzero; omit neutral interactions")
    return _from_arrays(n, src, dst, w)


def weak_components(g: SignedDigraph) -> list[set[int]]:
    """Weakly connected components, ordered by smallest member node."""
    parent = list(range(g.node_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in zip(g.sources.tolist(), g.targets.tolist()):
        rs, rt = find(s), find(t)
        if rs != rt:
            if rs < rt:
                parent[rt] = rs
            else:
                parent[rs] = rt
    groups: dict[int, set[int]] = {}
    for v in range(g.node_count):
        groups.setdefault(find(v), set()).add(v)
    return [groups[r] for r in sorted(groups)]


def clean(
    g: SignedDigraph, min_component_size: int | None = None
) -> tuple[SignedDigraph, dict[int, int]]:
    """Drop self-loops, duplicate edges and small islands.

    Duplicate ``(source, target)`` pairs keep their first occurrence.  Weakly
    connected components with fewer than ``min_component_size`` nodes are
    removed; the default keeps only the largest component.  Surviving nodes
    are renumbered densely in their original order.

    Returns the cleaned graph and the old-to-new index map.
    """
    if min_component_size is not None and min_component_size < 1:
        raise ValueError("min_component_size must be >= 1")
    keep = g.sources != g.targets
    src, dst, w = g.sources[keep], g.targets[keep], g.weights[keep]
    if src.size:
        key = src * max(g.node_count, 1) + dst
        _, first = np.unique(key, return_index=True)
        first.sort()
        src, dst, w = src[first], dst[first], w[first]
    stage = _from_arrays(g.node_count, src, dst, w)

    comps = weak_components(stage)
    if min_component_size is None:
        min_component_size = max((len(c) for c in comps), default=1)
    alive = np.zeros(g.node_count, dtype=bool)
    for c in comps:
        if len(c) >= min_component_size:
            alive[list(c)] = True

    survivors = np.flatnonzero(alive)
    remap = np.full(g.node_count, -1, dtype=np.int64)
    remap[survivors] = np.arange(survivors.size)
    edge_ok = alive[src] & alive[dst] if src.size else np.zeros(0, dtype=bool)
    cleaned = _from_arrays(
        int(survivors.size), remap[src[edge_ok]], remap[dst[edge_ok]], w[edge_ok]
    )
    index_map = {int(old): int(new) for new, old in enumerate(survivors)}
    return cleaned, index_map


def neighbor_counts(g: SignedDigraph) -> np.ndarray:
    """Number of distinct in-or-out neighbours of every node."""
    n = g.node_count
    if g.edge_count == 0:
        return np.zeros(n, dtype=np.int64)
    s, t = g.sources, g.targets
    loop = s == t
    s, t = s[~loop], t[~loop]
    a = np.concatenate([s, t])
    b = np.concatenate([t, s])
    pairs = np.unique(a * n + b)
    return np.bincount(pairs // n, minlength=n)


def degree_stats(g: SignedDigraph) -> DegreeStats:
    counts = neighbor_counts(g)
    if g.node_count == 0:
        return DegreeStats(0.0, 0, {})
    values, freq = np.unique(counts, return_counts=True)
    hist = {int(v): int(f) for v, f in zip(values, freq)}
    avg = math.fsum(counts.tolist()) / g.node_count
    return DegreeStats(avg, int(counts.max()), hist)
