"""Exact distances through a hitting set.

Pairs whose shortest paths use many edges are resolved exactly: a random
vertex sample large enough to hit every long path (w.h.p.), one Dijkstra
per sampled vertex in each direction over Johnson-reweighted arcs, and a
min-plus combine through the sample.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, johnson_potentials
from .matrices import INF, full_inf
from .sampling import Rng, sample


def hitting_set(n: int, t: int, rng: Rng) -> np.ndarray:
    """Sample ceil(8 n ln n / t) vertices (capped at n), 0-based sorted."""
    if t < 1:
        raise ValueError("path-length threshold t must be >= 1")
    count = 8.0 * n * math.log(n) / t if n > 1 else 0.0
    return sample(np.arange(n), count, rng)


def _adjacency(g: Graph, h: np.ndarray, reverse: bool):
    """Reweighted adjacency lists; arcs become nonnegative under h."""
    adj = [[] for _ in range(g.n)]
    for (u, v, w) in g.edges:
        wp = w + int(h[u - 1]) - int(h[v - 1])
        if wp < 0:
            raise ValueError("potentials do not reweight arcs nonnegatively")
        if reverse:
            adj[v - 1].append((u - 1, wp))
        else:
            adj[u - 1].append((v - 1, wp))
    return adj


def _dijkstra_heap(adj, src: int, n: int) -> np.ndarray:
    dist = np.empty(n, dtype=np.int64)
    dist.fill(INF)
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for (y, w) in adj[x]:
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def _dijkstra_dense(adj, src: int, n: int) -> np.ndarray:
    # O(n^2) selection variant, kept for instrumentation parity
    dist = np.empty(n, dtype=np.int64)
    dist.fill(INF)
    dist[src] = 0
    done = np.zeros(n, dtype=bool)
    for _ in range(n):
        x = -1
        best = INF
        for i in range(n):
            if not done[i] and dist[i] < best:
                best = dist[i]
                x = i
        if x < 0:
            break
        done[x] = True
        for (y, w) in adj[x]:
            nd = dist[x] + w
            if nd < dist[y]:
                dist[y] = nd
    return dist


def sssp_from(g: Graph, h: np.ndarray, src: int, reverse: bool = False,
              dense: bool = False) -> np.ndarray:
    """Distances from (or, reversed, to) 0-based vertex src.

    Forward: out[v] = dist(src, v). Reverse: out[v] = dist(v, src).
    """
    adj = _adjacency(g, h, reverse)
    runner = _dijkstra_dense if dense else _dijkstra_heap
    dp = runner(adj, src, g.n)
    out = np.empty(g.n, dtype=np.int64)
    out.fill(INF)
    fin = dp < INF
    if reverse:
        # reversed reweighted length of v->src is dist(v,src) + h[v] - h[src]
        out[fin] = dp[fin] - h[fin] + h[src]
    else:
        out[fin] = dp[fin] - h[src] + h[fin]
    return out


@dataclass
class FarDistances:
    delta: np.ndarray
    hitting: np.ndarray
    potentials: np.ndarray
    t: int


def compute_delta_t(g: Graph, t: int, rng: Rng, dense: bool = False) -> FarDistances:
    """delta_t[u,v] = min over sampled x of dist(u,x) + dist(x,v).

    Exact (= dist) for every pair whose shortest path has >= t edges,
    with high probability; an upper bound on dist everywhere.
    """
    n = g.n
    if n == 1:
        return FarDistances(delta=np.zeros((1, 1), dtype=np.int64),
                            hitting=np.zeros(0, dtype=np.int64),
                            potentials=np.zeros(1, dtype=np.int64), t=t)
    h = johnson_potentials(g)
    xs = hitting_set(n, t, rng)
    delta = full_inf(n, n)
    for x in xs:
        row = sssp_from(g, h, int(x), reverse=False, dense=dense)
        col = sssp_from(g, h, int(x), reverse=True, dense=dense)
        ok = (col < INF)[:, None] & (row < INF)[None, :]
        cand = col[:, None] + row[None, :]
        np.copyto(delta, cand, where=ok & (cand < delta))
    return FarDistances(delta=delta, hitting=xs, potentials=h, t=t)
