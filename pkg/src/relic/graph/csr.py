"""Undirected CSR graphs and the Kronecker generator."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

KRONECKER_PROBS = (0.57, 0.19, 0.19, 0.05)
MAX_RANDOM_WEIGHT = 255


@dataclass(frozen=True, eq=False)
class Graph:
    """Symmetric, self-loop-free graph in compressed sparse row form.

    ``neighbors[offsets[u]:offsets[u + 1]]`` are the sorted, unique neighbours
    of ``u``; ``weights`` (if present) is aligned with ``neighbors``.
    """

    num_nodes: int
    offsets: np.ndarray
    neighbors: np.ndarray
    weights: np.ndarray | None = None

    @property
    def num_edges(self) -> int:
        """Undirected edge count."""
        return len(self.neighbors) // 2

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def degree(self, u: int) -> int:
        return int(self.offsets[u + 1] - self.offsets[u])

    def neighbors_of(self, u: int) -> np.ndarray:
        return self.neighbors[self.offsets[u] : self.offsets[u + 1]]

    def edges(self) -> list[tuple[int, int, int | None]]:
        """Each undirected edge once, as ``(u, v, w)`` with ``u < v``."""
        out = []
        for u in range(self.num_nodes):
            for i in range(self.offsets[u], self.offsets[u + 1]):
                v = int(self.neighbors[i])
                if u < v:
                    w = int(self.weights[i]) if self.weights is not None else None
                    out.append((u, v, w))
        return out

    def copy(self) -> "Graph":
        """Deep copy; shares no buffers with ``self``."""
        return Graph(
            self.num_nodes,
            self.offsets.copy(),
            self.neighbors.copy(),
            None if self.weights is None else self.weights.copy(),
        )

    def with_unit_weights(self) -> "Graph":
        return Graph(self.num_nodes, self.offsets, self.neighbors, np.ones_like(self.neighbors))

    def identical_to(self, other: "Graph") -> bool:
        if self.num_nodes != other.num_nodes or self.weighted != other.weighted:
            return False
        same = np.array_equal(self.offsets, other.offsets) and np.array_equal(
            self.neighbors, other.neighbors
        )
        if same and self.weighted:
            same = np.array_equal(self.weights, other.weights)
        return bool(same)

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if the CSR structure is malformed."""
        n = self.num_nodes
        off, nbr = self.offsets, self.neighbors
        assert len(off) == n + 1
        assert off[0] == 0 and off[n] == len(nbr)
        assert np.all(np.diff(off) >= 0)
        adj = {}
        for u in range(n):
            row = nbr[off[u] : off[u + 1]]
            assert np.all(np.diff(row) > 0), f"row {u} not sorted/unique"
            assert u not in row, f"self-loop at {u}"
            assert np.all((row >= 0) & (row < n))
            for i, v in enumerate(row):
                w = None if self.weights is None else int(self.weights[off[u] + i])
                adj[(u, int(v))] = w
        for (u, v), w in adj.items():
            assert (v, u) in adj, f"edge {u}-{v} not symmetric"
            assert adj[(v, u)] == w, f"edge {u}-{v} has asymmetric weight"
        if self.weights is not None:
            assert np.all(self.weights >= 1)


def from_edge_list(n: int, edges: Iterable[Sequence[int]], weighted: bool | None = None) -> Graph:
    """Build a symmetric, deduplicated CSR graph from ``(u, v)`` / ``(u, v, w)`` tuples.

    Self-loops are dropped. If any edge carries a weight, every edge is
    weighted (default 1); duplicate edges keep the smallest weight. Pass
    ``weighted`` to force the choice, e.g. for an edgeless weighted graph.
    """
    if n < 0:
        raise ValueError(f"negative node count {n}")
    best: dict[tuple[int, int], int] = {}
    any_weight = False
    for edge in edges:
        if len(edge) == 3 and edge[2] is not None:
            u, v, w = int(edge[0]), int(edge[1]), int(edge[2])
            if w < 1:
                raise ValueError(f"edge weights must be >= 1, got {w} on {u}-{v}")
            any_weight = True
        elif len(edge) in (2, 3):
            u, v, w = int(edge[0]), int(edge[1]), 1
        else:
            raise ValueError(f"malformed edge {edge!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {u}-{v} out of range for {n} nodes")
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key not in best or w < best[key]:
            best[key] = w
    return _build_csr(n, best, weighted=any_weight if weighted is None else weighted)


def _build_csr(n: int, undirected: dict[tuple[int, int], int], weighted: bool) -> Graph:
    m = len(undirected)
    src = np.empty(2 * m, dtype=np.int64)
    dst = np.empty(2 * m, dtype=np.int64)
    wts = np.empty(2 * m, dtype=np.int64)
    for i, ((u, v), w) in enumerate(undirected.items()):
        src[2 * i], dst[2 * i] = u, v
        src[2 * i + 1], dst[2 * i + 1] = v, u
        wts[2 * i] = wts[2 * i + 1] = w
    order = np.lexsort((dst, src))
    src, dst, wts = src[order], dst[order], wts[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return Graph(n, offsets, dst, wts if weighted else None)


def generate_kronecker(scale: int, degree: int, seed: int, weighted: bool = False) -> Graph:
    """Kronecker (R-MAT) graph on ``2**scale`` nodes from ``degree * 2**scale`` samples.

    Each sampled edge picks one quadrant per bit level with probabilities
    ``KRONECKER_PROBS``. Self-loops are dropped and the result is symmetrized
    and deduplicated. With ``weighted=True`` every undirected edge receives a
    uniform integer weight in ``[1, 255]`` from a stream derived from ``seed``;
    the edge set is the same as the unweighted graph for that seed.
    """
    src, dst = kronecker_samples(scale, degree, seed)
    n = 1 << scale
    undirected: dict[tuple[int, int], int] = {}
    for u, v in zip(src.tolist(), dst.tolist()):
        if u != v:
            undirected.setdefault((min(u, v), max(u, v)), 1)
    if weighted:
        rng = np.random.default_rng([seed, 1])
        keys = sorted(undirected)
        draws = rng.integers(1, MAX_RANDOM_WEIGHT, size=len(keys), endpoint=True)
        undirected = dict(zip(keys, draws.tolist()))
    return _build_csr(n, undirected, weighted=weighted)


def kronecker_samples(scale: int, degree: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Raw directed samples ``(src, dst)`` before loop removal and dedup."""
    if scale < 1 or degree < 1:
        raise ValueError(f"scale and degree must be >= 1, got scale={scale}, degree={degree}")
    num_samples = degree << scale
    rng = np.random.default_rng(seed)
    a, b, c, _ = KRONECKER_PROBS
    src = np.zeros(num_samples, dtype=np.int64)
    dst = np.zeros(num_samples, dtype=np.int64)
    for level in range(scale):
        r = rng.random(num_samples)
        src_bit = r >= a + b  # quadrants C, D
        dst_bit = ((r >= a) & (r < a + b)) | (r >= a + b + c)  # quadrants B, D
        src |= src_bit.astype(np.int64) << level
        dst |= dst_bit.astype(np.int64) << level
    return src, dst


def load_edge_list(path: str | os.PathLike) -> Graph:
    """Read a ``u v [w]`` text edge list; ``#`` lines are comments."""
    edges = []
    max_id = -1
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 'u v' or 'u v w', got {line!r}")
            edge = tuple(int(p) for p in parts)
            max_id = max(max_id, edge[0], edge[1])
            edges.append(edge)
    return from_edge_list(max_id + 1, edges)
