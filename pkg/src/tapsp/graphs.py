"""Graph type, text format, generation, and potential-based reweighting.

Vertices are numbered 1..n. Arcs are directed with integer weights in
[-M, M]; self-loops are rejected and parallel arcs collapse to the
cheapest one. The text format follows the DIMACS shortest-path layout:

    c optional comment
    p sp <n> <m>
    a <u> <v> <w>
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import INF, bool_product
from .sampling import Rng


class GraphParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NegativeCycleError(Exception):
    def __init__(self, message: str = "negative cycle", cycle=None):
        self.cycle = list(cycle) if cycle else None
        if self.cycle:
            message = f"{message}: {' -> '.join(map(str, self.cycle))}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple
    M: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if self.M < 1:
            raise ValueError("weight bound M must be a positive integer")
        seen = set()
        for (u, v, w) in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc ({u},{v}) out of range 1..{self.n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if abs(w) > self.M:
                raise ValueError(f"weight {w} exceeds bound {self.M}")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            seen.add((u, v))

    @property
    def m(self) -> int:
        return len(self.edges)

    def positive_weights(self) -> bool:
        return all(w >= 1 for (_, _, w) in self.edges)


def make_graph(n: int, arcs, M: int | None = None) -> Graph:
    """Build a Graph, collapsing duplicate arcs to their minimum weight."""
    best = {}
    for (u, v, w) in arcs:
        key = (u, v)
        if key not in best or w < best[key]:
            best[key] = w
    edges = tuple(sorted((u, v, w) for (u, v), w in best.items()))
    if M is None:
        M = max([1] + [abs(w) for (_, _, w) in edges])
    return Graph(n=n, edges=edges, M=M)


def to_matrix(g: Graph) -> np.ndarray:
    """Weight matrix with 0 diagonal and INF for absent arcs."""
    w = np.empty((g.n, g.n), dtype=np.int64)
    w.fill(INF)
    np.fill_diagonal(w, 0)
    for (u, v, wt) in g.edges:
        w[u - 1, v - 1] = wt
    return w


def parse_graph(text: str, max_weight: int | None = None) -> Graph:
    """Parse the DIMACS-like format. Raises GraphParseError with the
    offending line number on malformed input."""
    n = None
    m = None
    arcs = []
    raw_arcs = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "sp":
                raise GraphParseError("expected 'p sp <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError("non-integer problem sizes", lineno)
            if n < 1 or m < 0:
                raise GraphParseError("invalid sizes in problem line", lineno)
        elif parts[0] == "a":
            if n is None:
                raise GraphParseError("arc before problem line", lineno)
            if len(parts) != 4:
                raise GraphParseError("expected 'a <u> <v> <w>'", lineno)
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError("non-integer arc fields", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex out of range in arc ({u},{v})", lineno)
            if u == v:
                raise GraphParseError(f"self-loop on vertex {u}", lineno)
            if max_weight is not None and abs(w) > max_weight:
                raise GraphParseError(
                    f"weight {w} exceeds declared bound {max_weight}", lineno)
            raw_arcs += 1
            arcs.append((u, v, w))
        else:
            raise GraphParseError(f"unknown record {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing problem line")
    if raw_arcs != m:
        raise GraphParseError(f"problem line declares {m} arcs, found {raw_arcs}")
    return make_graph(n, arcs, M=max_weight)


def write_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    lines.append(f"p sp {g.n} {g.m}")
    for (u, v, w) in g.edges:
        lines.append(f"a {u} {v} {w}")
    return "\n".join(lines) + "\n"


def gen_random(n: int, density: float, wmin: int, wmax: int, seed: int,
               require_no_neg_cycle: bool = False,
               max_attempts: int = 1000) -> Graph:
    """Erdos-Renyi style digraph with uniform integer weights.

    With require_no_neg_cycle, regenerates from derived seeds until the
    graph is free of negative cycles, giving up after max_attempts.
    """
    if not (0.0 <= density <= 1.0):
        raise ValueError("density must be in [0, 1]")
    if wmin > wmax:
        raise ValueError("wmin must not exceed wmax")
    bound = max(1, abs(wmin), abs(wmax))
    base = Rng(seed)
    for attempt in range(max_attempts):
        rng = base.derive(attempt)
        arcs = []
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if u == v:
                    continue
                if rng.unit() < density:
                    arcs.append((u, v, rng.randint(wmin, wmax)))
        g = make_graph(n, arcs, M=bound)
        if not require_no_neg_cycle or find_negative_cycle(g) is None:
            return g
    raise ValueError(
        f"no negative-cycle-free graph found in {max_attempts} attempts")


def gen_mixed_ncf(n: int, density: float, M: int, seed: int,
                  backbone: bool = False) -> Graph:
    """Mixed-sign instance that is negative-cycle-free by construction.

    Rejection sampling (gen_random with require_no_neg_cycle) stops
    working beyond toy sizes: a dense mixed-weight digraph almost surely
    holds a negative cycle. Instead, draw a potential h[v] in [0, M] per
    vertex and a nonnegative reweighted cost wp in [0, M + h[u] - h[v]]
    per arc, then undo the reweighting: w = wp - h[u] + h[v]. Cycle
    weights telescope back to the nonnegative reweighted sums, so no
    negative cycle can appear, and |w| <= M by the choice of ranges.

    With backbone, the full cycle 1 -> 2 -> ... -> n -> 1 is always
    present, making the graph strongly connected.
    """
    if not (0.0 <= density <= 1.0):
        raise ValueError("density must be in [0, 1]")
    if M < 1:
        raise ValueError("need M >= 1")
    rng = Rng(seed)
    h = [rng.randint(0, M) for _ in range(n)]

    def weigh(u, v):
        wp = rng.randint(0, M + h[u - 1] - h[v - 1])
        return wp - h[u - 1] + h[v - 1]

    arcs = {}
    if backbone and n > 1:
        for u in range(1, n + 1):
            arcs[(u, u % n + 1)] = weigh(u, u % n + 1)
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u != v and (u, v) not in arcs and rng.unit() < density:
                arcs[(u, v)] = weigh(u, v)
    return make_graph(n, [(u, v, w) for (u, v), w in arcs.items()], M=M)


def _bellman_ford(g: Graph):
    """Super-source Bellman-Ford: h[v] = shortest distance from a virtual
    source with 0-arcs to every vertex. Returns (h, pred, relaxable)."""
    n = g.n
    h = np.zeros(n, dtype=np.int64)
    pred = np.full(n, -1, dtype=np.int64)
    for _ in range(n - 1):
        changed = False
        for (u, v, w) in g.edges:
            cand = h[u - 1] + w
            if cand < h[v - 1]:
                h[v - 1] = cand
                pred[v - 1] = u - 1
                changed = True
        if not changed:
            break
    relaxable = None
    for (u, v, w) in g.edges:
        if h[u - 1] + w < h[v - 1]:
            relaxable = (u, v)
            break
    return h, pred, relaxable


def find_negative_cycle(g: Graph):
    """A vertex list of some negative cycle, or None."""
    h, pred, relaxable = _bellman_ford(g)
    if relaxable is None:
        return None
    u, v = relaxable
    pred[v - 1] = u - 1
    # the predecessor walk from v must revisit a vertex within n steps,
    # and the revisited stretch is a negative cycle
    seen = set()
    x = v - 1
    while x not in seen:
        seen.add(x)
        x = pred[x]
        if x < 0:
            raise RuntimeError("predecessor chain broke during cycle trace")
    cycle = [x]
    y = pred[x]
    while y != x:
        cycle.append(y)
        y = pred[y]
    cycle.reverse()
    return [c + 1 for c in cycle]


def detect_negative_cycle(g: Graph) -> bool:
    return _bellman_ford(g)[2] is not None


def johnson_potentials(g: Graph) -> np.ndarray:
    """Potentials h with w(u,v) + h(u) - h(v) >= 0 for every arc."""
    h, _, relaxable = _bellman_ford(g)
    if relaxable is not None:
        raise NegativeCycleError(cycle=find_negative_cycle(g))
    return h


def transitive_closure(g: Graph) -> np.ndarray:
    """Boolean reachability matrix (diagonal true)."""
    n = g.n
    reach = np.eye(n, dtype=bool)
    for (u, v, _) in g.edges:
        reach[u - 1, v - 1] = True
    steps = 1 if n <= 2 else int(np.ceil(np.log2(n)))
    for _ in range(steps):
        reach = bool_product(reach, reach) | reach
    return reach
