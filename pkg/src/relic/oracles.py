"""Brute-force reference implementations used to check the graph kernels.

These work on plain edge lists and adjacency sets, never on the CSR arrays
or compiled code they check, and favour obviousness over speed.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from relic.graph import (
    UNREACHED,
    betweenness_centrality,
    bfs,
    connected_components_sv,
    from_edge_list,
    generate_kronecker,
    pagerank,
    sssp,
    triangle_count,
)

INF = math.inf


def random_edges(rng: random.Random, n: int, p: float, weighted: bool = False) -> list[tuple]:
    """Erdos-Renyi style edge list; weights in [1, 255] when ``weighted``."""
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((u, v, rng.randint(1, 255)) if weighted else (u, v))
    return edges


def adjacency(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for e in edges:
        u, v = e[0], e[1]
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def weight_map(edges) -> dict[tuple[int, int], int]:
    w: dict[tuple[int, int], int] = {}
    for u, v, *rest in edges:
        if u == v:
            continue
        wt = rest[0] if rest and rest[0] is not None else 1
        key = (min(u, v), max(u, v))
        w[key] = min(w.get(key, wt), wt)
    return w


def floyd_warshall(n: int, edges, unit: bool = True) -> list[list[float]]:
    dist = [[INF] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for (u, v), w in weight_map(edges).items():
        w = 1 if unit else w
        dist[u][v] = min(dist[u][v], w)
        dist[v][u] = min(dist[v][u], w)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            di = dist[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return dist


def flood_fill_partition(n: int, edges) -> set[frozenset[int]]:
    adj = adjacency(n, edges)
    seen = [False] * n
    parts = set()
    for s in range(n):
        if seen[s]:
            continue
        comp, queue = {s}, deque([s])
        seen[s] = True
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    queue.append(v)
        parts.add(frozenset(comp))
    return parts


def labels_to_partition(labels) -> set[frozenset[int]]:
    groups: dict[int, set[int]] = {}
    for node, label in enumerate(labels):
        groups.setdefault(int(label), set()).add(node)
    return {frozenset(g) for g in groups.values()}


def triangles_brute(n: int, edges) -> int:
    adj = adjacency(n, edges)
    return sum(
        1
        for a, b, c in itertools.combinations(range(n), 3)
        if b in adj[a] and c in adj[a] and c in adj[b]
    )


def bellman_ford(n: int, edges, source: int) -> list[float]:
    arcs = []
    for (u, v), w in weight_map(edges).items():
        arcs.append((u, v, w))
        arcs.append((v, u, w))
    dist = [INF] * n
    dist[source] = 0
    for _ in range(n - 1):
        changed = False
        for u, v, w in arcs:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    return dist


def pagerank_dense(n: int, edges, damping=0.85, tolerance=1e-4, max_iters=20) -> np.ndarray:
    """Power iteration with an explicit column-stochastic transition matrix."""
    adj = adjacency(n, edges)
    m = np.zeros((n, n))
    for u in range(n):
        if adj[u]:
            for v in adj[u]:
                m[v, u] = 1.0 / len(adj[u])
        else:
            m[:, u] = 1.0 / n
    x = np.full(n, 1.0 / n)
    for _ in range(max_iters):
        x_new = (1.0 - damping) / n + damping * (m @ x)
        err = np.abs(x_new - x).sum()
        x = x_new
        if err <= tolerance:
            break
    return x


def betweenness_enumerated(n: int, edges, source: int) -> list[float]:
    """Sum over targets of the fraction of shortest source paths through each node.

    Every shortest path is listed explicitly by depth-first search.
    """
    adj = adjacency(n, edges)
    dist = floyd_warshall(n, edges)[source]
    paths_to: dict[int, list[tuple[int, ...]]] = {t: [] for t in range(n)}

    def extend(path):
        u = path[-1]
        paths_to[u].append(path)
        for x in adj[u]:
            if dist[x] == len(path):
                extend(path + (x,))

    extend((source,))
    scores = [0.0] * n
    for t in range(n):
        if t == source or not paths_to[t]:
            continue
        total = len(paths_to[t])
        for v in range(n):
            if v in (source, t):
                continue
            through = sum(1 for p in paths_to[t] if v in p)
            scores[v] += through / total
    return scores


def _as_inf(arr) -> list[float]:
    return [INF if x == UNREACHED else int(x) for x in arr]


@dataclass
class OracleFailure:
    kernel: str
    graph: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kernel} on {self.graph}: {self.detail}"


def check_graph(label: str, n: int, edges, weighted_edges=None, check_bc: bool = True) -> list[OracleFailure]:
    """Compare every kernel on one graph against its oracle.

    ``weighted_edges`` (same pairs, with weights) drives the SSSP check.
    """
    fails = []
    g = from_edge_list(n, edges)
    if n == 0:
        return fails
    fw = floyd_warshall(n, edges)
    for s in range(n):
        got = _as_inf(bfs(g, s))
        if got != fw[s]:
            fails.append(OracleFailure("bfs", label, f"source {s}: {got} != {fw[s]}"))
            break
    if labels_to_partition(connected_components_sv(g)) != flood_fill_partition(n, edges):
        fails.append(OracleFailure("cc", label, "partition differs from flood fill"))
    tc, want = triangle_count(g), triangles_brute(n, edges)
    if tc != want:
        fails.append(OracleFailure("tc", label, f"{tc} != {want}"))
    pr = pagerank(g)
    err = float(np.max(np.abs(pr - pagerank_dense(n, edges)))) if n else 0.0
    if err > 1e-9:
        fails.append(OracleFailure("pr", label, f"L-inf error {err:g}"))
    if weighted_edges is not None:
        gw = from_edge_list(n, weighted_edges, weighted=True)
        for s in range(n):
            got = _as_inf(sssp(gw, s))
            want = bellman_ford(n, weighted_edges, s)
            if got != want:
                fails.append(OracleFailure("sssp", label, f"source {s}: {got} != {want}"))
                break
    if check_bc:
        for s in range(n):
            bc = betweenness_centrality(g, s)
            err = float(np.max(np.abs(bc - np.array(betweenness_enumerated(n, edges, s)))))
            if err > 1e-9:
                fails.append(OracleFailure("bc", label, f"source {s}: L-inf error {err:g}"))
                break
    return fails


def kernel_oracle_suite(seed: int = 42, count: int = 100, max_nodes: int = 32, bc_max_nodes: int = 16) -> list[OracleFailure]:
    """Run every kernel against its oracle on ``count`` random graphs plus the
    scale-5 degree-4 Kronecker graph. Returns the list of failures."""
    rng = random.Random(seed)
    fails: list[OracleFailure] = []
    for i in range(count):
        n = rng.randint(1, max_nodes)
        p = rng.choice([0.05, 0.1, 0.2, 0.35, 0.6])
        weighted = random_edges(rng, n, p, weighted=True)
        plain = [(u, v) for u, v, _ in weighted]
        fails += check_graph(f"random#{i}(n={n},p={p})", n, plain, weighted, check_bc=n <= bc_max_nodes)

    # BC is checked on its own graph family so the n <= 16 requirement does
    # not leave it with only a third of the sample.
    for i in range(count):
        n = rng.randint(1, bc_max_nodes)
        edges = random_edges(rng, n, rng.choice([0.1, 0.2, 0.35, 0.6]))
        g = from_edge_list(n, edges)
        for s in range(n):
            err = float(np.max(np.abs(betweenness_centrality(g, s) - np.array(betweenness_enumerated(n, edges, s)))))
            if err > 1e-9:
                fails.append(OracleFailure("bc", f"bc-random#{i}(n={n})", f"source {s}: L-inf error {err:g}"))
                break

    kron = generate_kronecker(5, 4, seed, weighted=True)
    weighted = kron.edges()
    plain = [(u, v) for u, v, _ in weighted]
    fails += check_graph(f"kronecker(scale=5,degree=4,seed={seed})", kron.num_nodes, plain, weighted, check_bc=False)
    return fails

