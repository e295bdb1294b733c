"""Hard-decision message-passing decoding with threshold schedules.

The forward (variable-to-check) message at iteration ``j`` is the received bit
when ``j == 1``; afterwards a variable forwards value ``m`` when at least
``b`` of its extrinsic incoming check messages equal ``m`` and falls back to
the received bit otherwise. Check-to-variable messages are extrinsic parity.
After each iteration a variable is estimated as the common value of all its
incoming messages, or its received bit when they disagree.

Everything here is the reference (dense, full-state) implementation. The
batch routines used by the verification and simulation engines live in
:mod:`ldpc_guard.backend`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .graph import TannerGraph

DEFAULT_MAX_ITER = 25
CW4_GUARANTEE_ITER = 4


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdSchedule:
    """Threshold ``b(j, degree)`` for forward messages at iteration ``j >= 2``."""

    name: str
    rule: Callable[[int, int], int] = field(compare=False, repr=False)

    def threshold(self, j: int, degree: int) -> int:
        return self.rule(j, degree)

    def validate(self, degrees: Iterable[int], max_iter: int) -> None:
        """Reject thresholds outside ``[1, degree-1]`` or ones that let both values match."""
        degrees = set(degrees)
        for d in degrees:
            if d <= 1:
                raise ScheduleError(f"variable degree {d} is not supported")
        # schedules only change at small j; checking up to max_iter covers all queried values
        for j in range(2, max(max_iter, 2) + 1):
            for d in degrees:
                b = self.rule(j, d)
                if not 1 <= b <= d - 1:
                    raise ScheduleError(f"{self.name}: threshold {b} out of range for degree {d}, j={j}")
                if 2 * b <= d - 1:
                    raise ScheduleError(f"{self.name}: threshold {b} is ambiguous for degree {d}, j={j}")

    def table(self, max_iter: int, max_degree: int) -> np.ndarray:
        """Thresholds as an int32 array indexed ``[j, degree]``; unused cells are 0."""
        t = np.zeros((max_iter + 1, max_degree + 1), dtype=np.int32)
        for j in range(2, max_iter + 1):
            for d in range(2, max_degree + 1):
                t[j, d] = self.rule(j, d)
        return t


GALLAGER_A = ThresholdSchedule("gallager-a", lambda j, d: d - 1)
CW3_FIXED = ThresholdSchedule("cw3-fixed", lambda j, d: 2)
CW4_HYBRID = ThresholdSchedule("cw4-hybrid", lambda j, d: 3 if j <= 3 else 2)

SCHEDULES = {s.name: s for s in (GALLAGER_A, CW3_FIXED, CW4_HYBRID)}


def get_schedule(name: str) -> ThresholdSchedule:
    try:
        return SCHEDULES[name]
    except KeyError:
        raise ScheduleError(f"unknown schedule {name!r}; choose from {sorted(SCHEDULES)}") from None


def default_schedule(graph: TannerGraph) -> ThresholdSchedule:
    return CW4_HYBRID if graph.column_weight == 4 else GALLAGER_A


@dataclass(frozen=True)
class ErrorPattern:
    """Support of the received word under the all-zero codeword convention."""

    support: tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise ValueError("support indices must be strictly increasing")

    @classmethod
    def of(cls, positions: Iterable[int]) -> "ErrorPattern":
        return cls(tuple(sorted(set(int(p) for p in positions))))

    @property
    def weight(self) -> int:
        return len(self.support)

    def to_word(self, n: int) -> np.ndarray:
        if self.support and (self.support[0] < 0 or self.support[-1] >= n):
            raise ValueError("support index out of range")
        w = np.zeros(n, dtype=np.uint8)
        w[list(self.support)] = 1
        return w


@dataclass
class MessageState:
    forward: np.ndarray
    backward: np.ndarray
    iteration: int


@dataclass
class DecodeOutcome:
    converged: bool
    iteration: Optional[int]
    final_estimate: np.ndarray
    iterations_run: int
    trajectory: Optional[list[tuple[int, ...]]] = None
    oscillation: Optional[int] = None
    messages: Optional[list[MessageState]] = None

    @property
    def verdict(self) -> str:
        return f"Converged({self.iteration})" if self.converged else "FailedMaxIter"

    def is_correct(self, transmitted: Optional[np.ndarray] = None) -> bool:
        if not self.converged:
            return False
        if transmitted is None:
            return not self.final_estimate.any()
        return bool(np.array_equal(self.final_estimate, transmitted))

    @property
    def miscorrected(self) -> bool:
        return self.converged and bool(self.final_estimate.any())


def variable_update(r_v: int, incoming: Sequence[int], j: int, b: int) -> int:
    """Forward message from a variable given its extrinsic backward messages."""
    if j == 1:
        return r_v
    ones = sum(incoming)
    zeros = len(incoming) - ones
    hit1, hit0 = ones >= b, zeros >= b
    assert not (hit1 and hit0), "ambiguous threshold"
    if hit1:
        return 1
    if hit0:
        return 0
    return r_v


def check_update(incoming: Sequence[int]) -> int:
    return sum(incoming) & 1


def decide(r_v: int, incoming: Sequence[int]) -> int:
    if all(m == incoming[0] for m in incoming):
        return incoming[0]
    return r_v


def syndrome(graph: TannerGraph, word) -> np.ndarray:
    word = np.asarray(word, dtype=np.uint8)
    if word.shape != (graph.n_vars,):
        raise ValueError(f"word length {word.shape} does not match n_vars={graph.n_vars}")
    csr = graph.csr
    s = np.bincount(csr.var_chk, weights=np.repeat(word, np.diff(csr.var_ptr)), minlength=graph.n_checks)
    s = s.astype(np.int64)
    return (s & 1).astype(np.uint8)


class _EdgeView:
    """Per-edge index arrays shared by the dense decoders."""

    def __init__(self, graph: TannerGraph):
        csr = graph.csr
        self.n = graph.n_vars
        self.m = graph.n_checks
        self.edge_var = np.repeat(np.arange(graph.n_vars, dtype=np.int32), np.diff(csr.var_ptr))
        self.edge_chk = csr.var_chk.astype(np.int32)
        self.var_deg = np.diff(csr.var_ptr).astype(np.int32)
        self.max_deg = int(self.var_deg.max()) if len(self.var_deg) else 0


def decode(
    graph: TannerGraph,
    received,
    schedule: ThresholdSchedule,
    max_iter: int = DEFAULT_MAX_ITER,
    record_trajectory: bool = False,
    record_messages: bool = False,
) -> DecodeOutcome:
    """Flooding-schedule decode of one received word.

    ``received`` is either a length-n bit array or an :class:`ErrorPattern`.
    Stops at the first iteration whose decision word is a codeword.
    """
    if isinstance(received, ErrorPattern):
        r = received.to_word(graph.n_vars)
    else:
        r = np.asarray(received, dtype=np.uint8)
        if r.shape != (graph.n_vars,):
            raise ValueError("received word length does not match graph")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    ev = _EdgeView(graph)
    schedule.validate(set(ev.var_deg.tolist()), max_iter)
    table = schedule.table(max_iter, ev.max_deg)
    ext = ev.var_deg[ev.edge_var] - 1
    r_e = r[ev.edge_var].astype(np.int32)

    traj: list[tuple[int, ...]] = [] if record_trajectory else None
    msgs: list[MessageState] = [] if record_messages else None
    history: list[np.ndarray] = []
    oscillation = None
    bwd = np.zeros(len(ev.edge_var), dtype=np.int32)
    x = r.copy()
    for j in range(1, max_iter + 1):
        if j == 1:
            fwd = r_e.copy()
        else:
            ones_v = np.bincount(ev.edge_var, weights=bwd, minlength=ev.n).astype(np.int32)
            ones = ones_v[ev.edge_var] - bwd
            zeros = ext - ones
            b = table[j][ev.var_deg[ev.edge_var]]
            fwd = np.where(ones >= b, 1, np.where(zeros >= b, 0, r_e)).astype(np.int32)
        par = np.bincount(ev.edge_chk, weights=fwd, minlength=ev.m).astype(np.int32)
        bwd = (par[ev.edge_chk] - fwd) & 1
        ones_v = np.bincount(ev.edge_var, weights=bwd, minlength=ev.n).astype(np.int32)
        x = np.where(ones_v == ev.var_deg, 1, np.where(ones_v == 0, 0, r)).astype(np.uint8)
        if record_messages:
            msgs.append(MessageState(fwd.copy(), bwd.copy(), j))
        if record_trajectory:
            traj.append(tuple(np.flatnonzero(x).tolist()))
            if oscillation is None:
                if history and np.array_equal(fwd, history[-1]):
                    oscillation = 1
                elif len(history) >= 2 and np.array_equal(fwd, history[-2]):
                    oscillation = 2
            history = (history + [fwd])[-2:]
        if not syndrome(graph, x).any():
            return DecodeOutcome(True, j, x, j, traj, oscillation, msgs)
    return DecodeOutcome(False, None, x, max_iter, traj, oscillation, msgs)


def decode_batch_dense(
    graph: TannerGraph,
    received: np.ndarray,
    schedule: ThresholdSchedule,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised full-state decode of a (batch, n) array of received words.

    Returns ``(status, iterations)`` with status 0 = decoded to all-zero,
    1 = converged to a nonzero codeword, 2 = no codeword within ``max_iter``.
    This is the independent reference for the sparse batch kernels.
    """
    R = np.asarray(received, dtype=np.int8)
    B = R.shape[0]
    ev = _EdgeView(graph)
    schedule.validate(set(ev.var_deg.tolist()), max_iter)
    table = schedule.table(max_iter, ev.max_deg)
    ext = (ev.var_deg[ev.edge_var] - 1)[None, :]
    H = graph.to_matrix().astype(np.int32)
    # variable-edge incidence for summing edge values per variable
    Pv = np.zeros((len(ev.edge_var), ev.n), dtype=np.int32)
    Pv[np.arange(len(ev.edge_var)), ev.edge_var] = 1
    Pc = np.zeros((len(ev.edge_chk), ev.m), dtype=np.int32)
    Pc[np.arange(len(ev.edge_chk)), ev.edge_chk] = 1
    r_e = R[:, ev.edge_var].astype(np.int32)
    status = np.full(B, 2, dtype=np.int8)
    iters = np.full(B, max_iter, dtype=np.int32)
    active = np.ones(B, dtype=bool)
    bwd = np.zeros_like(r_e)
    b_e = None
    for j in range(1, max_iter + 1):
        if j == 1:
            fwd = r_e.copy()
        else:
            b_e = table[j][ev.var_deg[ev.edge_var]][None, :]
            ones = (bwd @ Pv)[:, ev.edge_var] - bwd
            zeros = ext - ones
            fwd = np.where(ones >= b_e, 1, np.where(zeros >= b_e, 0, r_e))
        par = fwd @ Pc
        bwd = (par[:, ev.edge_chk] - fwd) & 1
        ones_v = bwd @ Pv
        x = np.where(ones_v == ev.var_deg[None, :], 1, np.where(ones_v == 0, 0, R))
        ok = ((x @ H.T) & 1).sum(axis=1) == 0
        done = ok & active
        status[done] = np.where(x[done].any(axis=1), 1, 0)
        iters[done] = j
        active &= ~ok
        if not active.any():
            break
    return status, iters
