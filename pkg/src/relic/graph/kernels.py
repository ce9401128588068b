"""Serial graph kernels over :class:`~relic.graph.csr.Graph`.

The inner loops are compiled with numba in ``nogil`` mode so two kernel
instances can genuinely overlap on two threads. The public wrappers validate
arguments and always return freshly allocated outputs.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from relic.graph.csr import Graph

#: Depth/distance of a node the source cannot reach. Serialized as ``null``.
UNREACHED = np.iinfo(np.int64).max

_jit = njit(nogil=True, cache=True)


def _check_source(g: Graph, source: int) -> int:
    if not (0 <= source < g.num_nodes):
        raise ValueError(f"source {source} out of range for {g.num_nodes} nodes")
    return int(source)


# -- BFS ------------------------------------------------------------------


@_jit
def _bfs(offsets, neighbors, n, source):
    depth = np.full(n, UNREACHED, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    depth[source] = 0
    queue[0] = source
    qhead, qtail = 0, 1
    while qhead < qtail:
        u = queue[qhead]
        qhead += 1
        for i in range(offsets[u], offsets[u + 1]):
            v = neighbors[i]
            if depth[v] == UNREACHED:
                depth[v] = depth[u] + 1
                queue[qtail] = v
                qtail += 1
    return depth


def bfs(g: Graph, source: int) -> np.ndarray:
    """Hop distance from ``source``; ``UNREACHED`` for other components."""
    return _bfs(g.offsets, g.neighbors, g.num_nodes, _check_source(g, source))


# -- connected components (Shiloach-Vishkin) ------------------------------


@_jit
def _shiloach_vishkin(offsets, neighbors, n):
    comp = np.arange(n, dtype=np.int64)
    change = True
    while change:
        change = False
        # Hook: attach the larger root under the smaller label.
        for u in range(n):
            for i in range(offsets[u], offsets[u + 1]):
                v = neighbors[i]
                cu = comp[u]
                cv = comp[v]
                if cu == cv:
                    continue
                high = max(cu, cv)
                low = min(cu, cv)
                if comp[high] == high:
                    comp[high] = low
                    change = True
        # Shortcut: compress every pointer chain to its root.
        for u in range(n):
            while comp[u] != comp[comp[u]]:
                comp[u] = comp[comp[u]]
    return comp


def connected_components_sv(g: Graph) -> np.ndarray:
    """Component label per node; each label is its component's smallest node id.

    Labels only ever decrease and always name a node of the same component,
    so the minimum node stays a root and ends up as everybody's label.
    """
    return _shiloach_vishkin(g.offsets, g.neighbors, g.num_nodes)


# -- PageRank -------------------------------------------------------------


@_jit
def _pagerank(offsets, neighbors, n, damping, tolerance, max_iters):
    scores = np.full(n, 1.0 / n)
    contrib = np.empty(n)
    base = (1.0 - damping) / n
    for _ in range(max_iters):
        dangling = 0.0
        for u in range(n):
            deg = offsets[u + 1] - offsets[u]
            if deg > 0:
                contrib[u] = scores[u] / deg
            else:
                contrib[u] = 0.0
                dangling += scores[u]
        teleport = base + damping * dangling / n
        error = 0.0
        new_scores = np.empty(n)
        for v in range(n):
            acc = 0.0
            for i in range(offsets[v], offsets[v + 1]):
                acc += contrib[neighbors[i]]
            new_scores[v] = teleport + damping * acc
            error += abs(new_scores[v] - scores[v])
        scores = new_scores
        if error <= tolerance:
            break
    return scores


def pagerank(g: Graph, damping: float = 0.85, tolerance: float = 1e-4, max_iters: int = 20) -> np.ndarray:
    """Power-iteration PageRank from the uniform vector.

    Mass held by degree-0 nodes is spread uniformly each iteration, so the
    scores always sum to one. Stops once the L1 change is at most
    ``tolerance`` or after ``max_iters`` iterations.
    """
    if g.num_nodes < 1:
        raise ValueError("pagerank needs at least one node")
    return _pagerank(g.offsets, g.neighbors, g.num_nodes, float(damping), float(tolerance), int(max_iters))


# -- SSSP -----------------------------------------------------------------


@_jit
def _heap_push(keys, vals, size, key, val):
    i = size
    keys[i] = key
    vals[i] = val
    while i > 0:
        parent = (i - 1) >> 1
        if keys[parent] <= keys[i]:
            break
        keys[parent], keys[i] = keys[i], keys[parent]
        vals[parent], vals[i] = vals[i], vals[parent]
        i = parent
    return size + 1


@_jit
def _heap_pop(keys, vals, size):
    key = keys[0]
    val = vals[0]
    size -= 1
    keys[0] = keys[size]
    vals[0] = vals[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        child = left
        if left + 1 < size and keys[left + 1] < keys[left]:
            child = left + 1
        if keys[i] <= keys[child]:
            break
        keys[child], keys[i] = keys[i], keys[child]
        vals[child], vals[i] = vals[i], vals[child]
        i = child
    return key, val, size


@_jit
def _dijkstra(offsets, neighbors, weights, n, source):
    dist = np.full(n, UNREACHED, dtype=np.int64)
    # Lazy deletion: at most one heap entry per successful relaxation.
    cap = len(neighbors) + 1
    keys = np.empty(cap, dtype=np.int64)
    vals = np.empty(cap, dtype=np.int64)
    dist[source] = 0
    size = _heap_push(keys, vals, 0, 0, source)
    while size > 0:
        d, u, size = _heap_pop(keys, vals, size)
        if d > dist[u]:
            continue
        for i in range(offsets[u], offsets[u + 1]):
            v = neighbors[i]
            nd = d + weights[i]
            if nd < dist[v]:
                dist[v] = nd
                size = _heap_push(keys, vals, size, nd, v)
    return dist


def sssp(g: Graph, source: int) -> np.ndarray:
    """Exact weighted shortest-path distances (binary-heap Dijkstra)."""
    if g.weights is None:
        raise ValueError("sssp needs a weighted graph; use Graph.with_unit_weights() for hop counts")
    return _dijkstra(g.offsets, g.neighbors, g.weights, g.num_nodes, _check_source(g, source))


# -- triangle counting ----------------------------------------------------


@_jit
def _triangles(offsets, neighbors, n):
    count = 0
    for u in range(n):
        u_lo, u_hi = offsets[u], offsets[u + 1]
        for i in range(u_lo, u_hi):
            v = neighbors[i]
            if v <= u:
                continue
            # Intersect N(u) and N(v), keeping only w > v.
            a, b = i + 1, offsets[v]
            b_hi = offsets[v + 1]
            while a < u_hi and b < b_hi:
                wa = neighbors[a]
                wb = neighbors[b]
                if wb <= v or wb < wa:
                    b += 1
                elif wa < wb:
                    a += 1
                else:
                    count += 1
                    a += 1
                    b += 1
    return count


def triangle_count(g: Graph) -> int:
    """Number of triangles, each counted once as ``u < v < w``."""
    return int(_triangles(g.offsets, g.neighbors, g.num_nodes))


# -- betweenness centrality -----------------------------------------------


@_jit
def _brandes_single_source(offsets, neighbors, n, source):
    depth = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n)
    order = np.empty(n, dtype=np.int64)
    depth[source] = 0
    sigma[source] = 1.0
    order[0] = source
    head, tail = 0, 1
    while head < tail:
        u = order[head]
        head += 1
        for i in range(offsets[u], offsets[u + 1]):
            v = neighbors[i]
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                order[tail] = v
                tail += 1
            if depth[v] == depth[u] + 1:
                sigma[v] += sigma[u]
    delta = np.zeros(n)
    for k in range(tail - 1, 0, -1):
        w = order[k]
        coeff = (1.0 + delta[w]) / sigma[w]
        for i in range(offsets[w], offsets[w + 1]):
            v = neighbors[i]
            if depth[v] == depth[w] - 1:
                delta[v] += sigma[v] * coeff
    delta[source] = 0.0
    return delta


def betweenness_centrality(g: Graph, source: int = 0) -> np.ndarray:
    """Unnormalized single-source Brandes dependency scores (hop-count paths)."""
    return _brandes_single_source(g.offsets, g.neighbors, g.num_nodes, _check_source(g, source))
