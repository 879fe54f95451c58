"""Threshold decisions for weights in [-M, M], randomized pipeline.

For a threshold d, every ordered pair is classified against an estimate
delta_star with dist <= delta_star <= dist + K: pairs at or below d are
reported, pairs beyond d + K are rejected outright, and the thin
uncertainty band in between is resolved exactly by a windowed product
around d/2. delta_star itself is the pointwise minimum of the hitting
set distances (long paths) and one scaled estimate per schedule level
(each level covering one band of path lengths).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .approx import additive_approximate
from .config import RunConfig
from .far_pairs import FarDistances, compute_delta_t
from .graphs import (Graph, NegativeCycleError, find_negative_cycle, to_matrix,
                     transitive_closure)
from .matrices import INF, dist_product_fast, is_finite, min_merge, window_shift
from .oracle import brute_threshold, floyd_warshall
from .partial_distances import PartialDistanceMatrix, build_partial
from .sampling import Rng
from .schedule import Schedule, build_schedule


class VerifyMismatchError(RuntimeError):
    """Verified run kept disagreeing with the oracle after all retries."""


@dataclass
class GeneralRun:
    """Threshold-independent state of one pipeline pass."""

    schedule: Schedule
    far: FarDistances
    partials: list
    estimates: list
    delta_star: np.ndarray


@dataclass
class ThresholdReport:
    reported: np.ndarray
    d: int
    stats: dict = field(default_factory=dict)
    window_exact: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return int(self.reported.sum())

    def pairs(self) -> list:
        return [(int(u) + 1, int(v) + 1) for u, v in zip(*np.nonzero(self.reported))]


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def prepare_general(g: Graph, config: RunConfig, rng: Rng) -> GeneralRun:
    """Everything that does not depend on the threshold: schedule, far
    distances, one partial matrix and scaled estimate per level."""
    sched = build_schedule(g.n, g.M, omega=config.omega,
                           force_beta=config.force_beta,
                           force_levels=config.force_levels)
    w = to_matrix(g)
    far = compute_delta_t(g, sched.t_far, rng.derive(0))
    partials = []
    estimates = []
    delta_star = far.delta.copy()
    for lev in sched.levels:
        pdm = build_partial(w, g.M, lev.beta, lev.gamma, rng.derive(100 + lev.index),
                            kernel=config.kernel,
                            strassen_cutoff=config.strassen_cutoff,
                            use_fast=config.use_fast_products)
        est = additive_approximate(pdm, lev, rng.derive(200 + lev.index),
                                   kernel=config.kernel,
                                   strassen_cutoff=config.strassen_cutoff)
        partials.append(pdm)
        estimates.append(est)
        delta_star = min_merge(delta_star, est.delta)
    # distances to self are identically 0 on negative-cycle-free graphs;
    # no level band covers edge count 0, so pin the diagonal directly
    np.fill_diagonal(delta_star, 0)
    return GeneralRun(schedule=sched, far=far, partials=partials,
                      estimates=estimates, delta_star=delta_star)


def target_distances(pdm: PartialDistanceMatrix, d: int, k_margin: int,
                     kernel: str = "schoolbook",
                     strassen_cutoff: int = 64) -> np.ndarray:
    """Exact distances near d recovered from one partial matrix.

    Keeps only entries within k_margin of d/2, shifts them down so the
    squared product stays in [0, 2*k_margin], and shifts back. Entries
    are >= dist everywhere and equal to dist for pairs of the matrix's
    band whose distance lies in (d, d + k_margin]."""
    lo = _ceil_div(d, 2) - k_margin
    hi = _floor_div(d, 2) + k_margin
    shift = _floor_div(d, 2) - k_margin
    s = window_shift(pdm.P, lo, hi, shift)
    r = dist_product_fast(s, s, bound=2 * k_margin, kernel=kernel,
                          strassen_cutoff=strassen_cutoff)
    out = np.empty_like(r)
    out.fill(INF)
    fin = is_finite(r)
    out[fin] = r[fin] + 2 * shift
    return out


def classify_threshold(run: GeneralRun, d: int, config: RunConfig) -> ThresholdReport:
    """Report pairs with delta_star <= d; resolve the (d, d+K] band."""
    k_margin = run.schedule.K
    ds = run.delta_star
    reported = ds <= d
    window = (ds > d) & (ds <= d + k_margin)
    stats = {
        "accepted": int(reported.sum()),
        "rejected": int((~reported & ~window).sum()),
        "window": int(window.sum()),
        "window_reported": 0,
        "K": k_margin,
        "levels": len(run.partials),
        "edge_case": None,
    }
    window_exact = {}
    if window.any():
        exact = run.far.delta.copy()
        for pdm in run.partials:
            exact = min_merge(exact, target_distances(
                pdm, d, k_margin, kernel=config.kernel,
                strassen_cutoff=config.strassen_cutoff))
        keep = window & (exact <= d)
        reported = reported | keep
        stats["window_reported"] = int(keep.sum())
        for u, v in zip(*np.nonzero(window)):
            val = exact[u, v]
            window_exact[(int(u) + 1, int(v) + 1)] = int(val) if val < INF else None
    return ThresholdReport(reported=reported, d=d, stats=stats,
                           window_exact=window_exact)


def _edge_case_report(g: Graph, d: int) -> ThresholdReport | None:
    span = g.n * g.M
    if d < -span:
        rep = np.zeros((g.n, g.n), dtype=bool)
        return ThresholdReport(reported=rep, d=d, stats={"edge_case": "below_range"})
    if d > span:
        rep = transitive_closure(g)
        return ThresholdReport(reported=rep, d=d, stats={"edge_case": "closure"})
    return None


def threshold_apsp_neg(g: Graph, d: int, config: RunConfig | None = None,
                       rng: Rng | None = None) -> ThresholdReport:
    """Ordered pairs at distance <= d, weights in [-M, M].

    Raises NegativeCycleError (with a witness cycle) if distances are
    undefined. In verify mode, instances up to config.verify_bound are
    checked against the brute-force oracle and re-run on fresh derived
    seeds until they agree, up to config.max_attempts passes.
    """
    config = config or RunConfig()
    rng = rng or Rng(config.seed)
    cycle = find_negative_cycle(g)
    if cycle is not None:
        raise NegativeCycleError(cycle=cycle)
    shortcut = _edge_case_report(g, d)
    if shortcut is not None:
        shortcut.stats["attempts"] = 1
        return shortcut
    if g.n == 1:
        rep = np.array([[d >= 0]], dtype=bool)
        return ThresholdReport(reported=rep, d=d,
                               stats={"edge_case": "single_vertex", "attempts": 1})
    oracle_rep = None
    if config.verify and g.n <= config.verify_bound:
        oracle_rep = brute_threshold(floyd_warshall(to_matrix(g)), d)
    attempts = config.max_attempts if oracle_rep is not None else 1
    for attempt in range(attempts):
        run = prepare_general(g, config, rng.derive(attempt))
        report = classify_threshold(run, d, config)
        report.stats["attempts"] = attempt + 1
        if oracle_rep is None or np.array_equal(report.reported, oracle_rep):
            return report
    raise VerifyMismatchError(
        f"threshold report still disagrees with oracle after "
        f"{attempts} attempts (n={g.n}, d={d}, seed={config.seed})")
