"""Shared test utilities: instance generators and independent oracles.

The oracles here deliberately avoid the package's fast-path encodings so
that agreement between the two is meaningful evidence.
"""

import numpy as np

from tapsp.graphs import Graph, gen_mixed_ncf, make_graph
from tapsp.matrices import INF, dist_product_naive
from tapsp.sampling import Rng


def mixed_graph(n: int, density: float, M: int, seed: int) -> Graph:
    """Negative-cycle-free instance with weights in [-M, M], both signs."""
    return gen_mixed_ncf(n, density, M, seed)


def sc_positive_graph(n: int, density: float, M: int, seed: int) -> Graph:
    """Strongly connected: a full cycle backbone plus random extra arcs."""
    rng = Rng(seed)
    arcs = {}
    for u in range(1, n + 1):
        v = u % n + 1
        arcs[(u, v)] = rng.randint(1, M)
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u != v and (u, v) not in arcs and rng.unit() < density:
                arcs[(u, v)] = rng.randint(1, M)
    return make_graph(n, [(u, v, w) for (u, v), w in arcs.items()], M=M)


def sc_mixed_graph(n: int, density: float, M: int, seed: int) -> Graph:
    """Strongly connected, mixed-sign, negative-cycle-free."""
    return gen_mixed_ncf(n, density, M, seed, backbone=True)


def rand_dist_matrix(gen: np.random.Generator, rows: int, cols: int,
                     bound: int, inf_frac: float = 0.2) -> np.ndarray:
    """Random int64 matrix with entries in [-bound, bound] and some INF."""
    vals = gen.integers(-bound, bound + 1, size=(rows, cols)).astype(np.int64)
    mask = gen.random((rows, cols)) < inf_frac
    vals[mask] = INF
    return vals


def minplus_reference(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pure-Python min-plus product, the slowest and most obvious way."""
    l, m = a.shape
    m2, r = b.shape
    assert m == m2
    out = np.empty((l, r), dtype=np.int64)
    for i in range(l):
        for j in range(r):
            best = INF
            for k in range(m):
                if a[i, k] < INF and b[k, j] < INF:
                    cand = a[i, k] + b[k, j]
                    if cand < best:
                        best = cand
            out[i, j] = best
    return out


def poly_square_direct(coeffs: np.ndarray) -> np.ndarray:
    """Boolean polynomial square by explicit convolution of coefficients."""
    n, _, s = coeffs.shape
    out = np.zeros((n, n, 2 * s - 1), dtype=bool)
    ints = coeffs.astype(np.int64)
    for q1 in range(s):
        for q2 in range(s):
            out[:, :, q1 + q2] |= (ints[:, :, q1] @ ints[:, :, q2]) > 0
    return out


def squaring_apsp(w: np.ndarray) -> np.ndarray:
    """Distances by repeated naive min-plus squaring; second oracle.

    Only valid without negative cycles.
    """
    n = w.shape[0]
    d = w.copy()
    np.fill_diagonal(d, np.minimum(np.diag(d), 0))
    rounds = max(1, int(np.ceil(np.log2(max(n, 2)))))
    for _ in range(rounds):
        d = np.minimum(d, dist_product_naive(d, d))
    return d
