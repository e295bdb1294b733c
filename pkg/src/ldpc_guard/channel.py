"""Binary symmetric channel Monte Carlo, exact small-code FER and slope fitting."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import backend
from .decoder import DEFAULT_MAX_ITER, ThresholdSchedule, get_schedule
from .graph import TannerGraph
from .verification import default_workers, exhaustive_verify, random_supports

DEFAULT_CHUNK = 20_000


@dataclass(frozen=True)
class BscRun:
    alpha: float
    seed: int = 0
    max_trials: int = 10_000_000
    target_frame_errors: int = 100
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.target_frame_errors < 1:
            raise ValueError("target_frame_errors must be >= 1")
        if self.max_trials < 1:
            raise ValueError("max_trials must be >= 1")


def wilson(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for k successes in n trials."""
    if n == 0:
        return 0.0, 1.0
    p = k / n
    den = 1 + z * z / n
    mid = (p + z * z / (2 * n)) / den
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den
    # the endpoints are exactly 0 and 1 at k = 0 and k = n; rounding can miss them
    lo = 0.0 if k == 0 else max(0.0, mid - half)
    hi = 1.0 if k == n else min(1.0, mid + half)
    return lo, hi


@dataclass
class FerPoint:
    alpha: float
    trials: int
    frame_errors: int
    nonconverged: int = 0
    miscorrected: int = 0
    min_fail_weight: Optional[int] = None
    failure_weights: dict[int, int] = field(default_factory=dict)

    @property
    def fer(self) -> float:
        return self.frame_errors / self.trials if self.trials else 0.0

    @property
    def interval(self) -> tuple[float, float]:
        return wilson(self.frame_errors, self.trials)

    def csv_row(self) -> str:
        lo, hi = self.interval
        mw = "" if self.min_fail_weight is None else str(self.min_fail_weight)
        return f"{self.alpha:g},{self.trials},{self.frame_errors},{self.fer:.6e},{lo:.6e},{hi:.6e},{mw}"


CSV_HEADER = "alpha,trials,frame_errors,fer,ci_low,ci_high,min_fail_weight"


def points_to_csv(points: Sequence[FerPoint]) -> str:
    return "\n".join([CSV_HEADER] + [p.csv_row() for p in points]) + "\n"


def bsc_supports(rng: np.random.Generator, n: int, alpha: float, count: int):
    """Error supports of ``count`` BSC(alpha) words as (ptr int64, idx int32)."""
    flips = rng.random((count, n)) < alpha
    rows, cols = np.nonzero(flips)
    ptr = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=count), out=ptr[1:])
    return ptr, cols.astype(np.int32)


_SIM: dict = {}


def _sim_init(graph: TannerGraph, schedule_name: str, max_iter: int) -> None:
    _SIM["dec"] = backend.make_decoder(graph, get_schedule(schedule_name), max_iter)
    _SIM["n"] = graph.n_vars


def _sim_chunk(args):
    alpha, seed, index, count = args
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    ptr, idx = bsc_supports(rng, _SIM["n"], alpha, count)
    status = np.zeros(count, dtype=np.int8)
    iters = np.zeros(count, dtype=np.int32)
    _SIM["dec"].decode_supports(ptr, idx, status, iters)
    return status, np.diff(ptr).astype(np.int32)


def simulate_fer(graph: TannerGraph, schedule: ThresholdSchedule, run: BscRun,
                 workers: Optional[int] = None, chunk: int = DEFAULT_CHUNK) -> FerPoint:
    """Transmit the all-zero word over BSC(alpha) until the target error count or trial cap.

    Chunk i of ``chunk`` trials draws from ``SeedSequence([seed, i])``. Chunks
    are consumed in index order and the run stops at the exact trial that
    reaches the target, so tallies do not depend on ``workers``.
    """
    workers = default_workers() if workers is None else max(1, workers)
    pt = FerPoint(run.alpha, 0, 0)
    n_chunks = math.ceil(run.max_trials / chunk)

    def jobs(start, stop):
        return [(run.alpha, run.seed, i, min(chunk, run.max_trials - i * chunk)) for i in range(start, stop)]

    def consume(status, weights) -> bool:
        bad = status != 0
        cum = np.cumsum(bad)
        if pt.frame_errors + (int(cum[-1]) if len(cum) else 0) >= run.target_frame_errors:
            stop = int(np.searchsorted(cum, run.target_frame_errors - pt.frame_errors)) + 1
            status, weights, bad = status[:stop], weights[:stop], bad[:stop]
        pt.trials += len(status)
        pt.frame_errors += int(bad.sum())
        pt.nonconverged += int((status == 2).sum())
        pt.miscorrected += int((status == 1).sum())
        for w, k in zip(*np.unique(weights[bad], return_counts=True)):
            pt.failure_weights[int(w)] = pt.failure_weights.get(int(w), 0) + int(k)
        return pt.frame_errors >= run.target_frame_errors

    if workers == 1:
        _sim_init(graph, schedule.name, run.max_iter)
        for i in range(n_chunks):
            if consume(*_sim_chunk(jobs(i, i + 1)[0])):
                break
    else:
        with ProcessPoolExecutor(workers, initializer=_sim_init,
                                 initargs=(graph, schedule.name, run.max_iter)) as ex:
            i = 0
            done = False
            while i < n_chunks and not done:
                batch = jobs(i, min(n_chunks, i + workers))
                for res in ex.map(_sim_chunk, batch):
                    if consume(*res):
                        done = True
                        break
                i += len(batch)
    if pt.failure_weights:
        pt.min_fail_weight = min(pt.failure_weights)
    pt.failure_weights = dict(sorted(pt.failure_weights.items()))
    return pt


def exact_fer(graph: TannerGraph, schedule: ThresholdSchedule, alpha: float,
              max_iter: int = DEFAULT_MAX_ITER, max_weight: Optional[int] = None) -> float:
    """FER by enumerating every error support (or those of weight <= max_weight).

    With a weight cap the result is a lower bound missing the tail mass.
    """
    n = graph.n_vars
    top = n if max_weight is None else min(n, max_weight)
    if math.fsum(math.comb(n, w) for w in range(top + 1)) > 5e6:
        raise ValueError("enumeration too large; lower max_weight")
    dec = backend.make_decoder(graph, schedule, max_iter)
    total = 0.0
    for w in range(1, top + 1):
        pats = np.array(list(combinations(range(n), w)), dtype=np.int32)
        st, _ = backend.decode_fixed_weight(dec, pats)
        total += int((st != 0).sum()) * alpha ** w * (1 - alpha) ** (n - w)
    return total


@dataclass
class SlopeFit:
    slope: float
    intercept: float
    residual: float
    points_used: int
    insufficient: bool


def usable(p: FerPoint, min_errors: int = 20) -> bool:
    lo, hi = p.interval
    # interval narrower than half a decade
    return p.frame_errors >= min_errors and lo > 0 and math.log10(hi / lo) < 0.5


def estimate_slope(points: Sequence[FerPoint], min_errors: int = 20, min_points: int = 3) -> SlopeFit:
    """Least-squares slope of log FER against log alpha over well-estimated points.

    ``insufficient`` is set when fewer than ``min_points`` points qualify; a
    fit is still returned when at least two do.
    """
    good = [p for p in points if usable(p, min_errors)]
    if len(good) < 2:
        return SlopeFit(float("nan"), float("nan"), float("nan"), len(good), True)
    x = np.log([p.alpha for p in good])
    y = np.log([p.fer for p in good])
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, icpt), res, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(res[0] / len(good))) if len(res) else 0.0
    return SlopeFit(float(slope), float(icpt), resid, len(good), len(good) < min_points)


@dataclass
class MinFailureResult:
    weight: Optional[int]
    pattern: Optional[tuple[int, ...]]
    exhaustive_through: int
    searched_through: int
    proven_minimal: bool

    @property
    def lower_bound(self) -> int:
        return self.exhaustive_through + 1


def min_failure_weight_search(graph: TannerGraph, schedule: ThresholdSchedule,
                              max_iter: int = DEFAULT_MAX_ITER, weight_bound: int = 8,
                              exhaustive_weight: int = 3, samples_per_weight: int = 1_000_000,
                              seed: int = 0, workers: Optional[int] = None) -> MinFailureResult:
    """Smallest failing error weight: exhaustive up to ``exhaustive_weight``, random above.

    A weight found only by sampling is reported but not proven minimal.
    """
    for w in range(1, exhaustive_weight + 1):
        rep = exhaustive_verify(graph, schedule, w, max_iter, workers=workers, weights=[w], fail_cap=1)
        if not rep.guarantee_holds:
            return MinFailureResult(w, rep.failures[0].pattern, w - 1, w, True)
    dec = backend.make_decoder(graph, schedule, max_iter)
    for w in range(exhaustive_weight + 1, weight_bound + 1):
        rng = np.random.default_rng(np.random.SeedSequence([seed, w]))
        left = samples_per_weight
        while left > 0:
            k = min(left, 200_000)
            pats = random_supports(rng, graph.n_vars, w, k)
            st, _ = backend.decode_fixed_weight(dec, pats)
            bad = np.flatnonzero(st)
            if len(bad):
                return MinFailureResult(w, tuple(int(x) for x in pats[bad[0]]), exhaustive_weight, w, False)
            left -= k
    return MinFailureResult(None, None, exhaustive_weight, weight_bound, False)
