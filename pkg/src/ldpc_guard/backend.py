"""Selects the compiled kernels or their pure-Python twins at import time.

Set ``LDPC_GUARD_PURE=1`` to force the fallback. ``BACKEND`` names the one
in use. The helpers here turn :class:`TannerGraph` objects into the flat
arrays both implementations expect.
"""
from __future__ import annotations

import math
import os
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _purepy
from .decoder import DEFAULT_MAX_ITER, ThresholdSchedule
from .graph import TannerGraph

if os.environ.get("LDPC_GUARD_PURE") == "1":
    _impl = _purepy
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _purepy
        BACKEND = "python"

IMPLEMENTATIONS = {"python": _purepy}
if BACKEND == "compiled":
    IMPLEMENTATIONS["compiled"] = _impl


def _module(name: Optional[str]):
    if name is None:
        return _impl
    try:
        return IMPLEMENTATIONS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(IMPLEMENTATIONS)}") from None


def share_csr(graph: TannerGraph) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays of the 'shares at least one check' relation among variables."""
    sets = graph.share_sets
    ptr = np.zeros(graph.n_vars + 1, dtype=np.int32)
    ptr[1:] = np.cumsum([len(s) for s in sets])
    idx = np.fromiter((u for s in sets for u in sorted(s)), dtype=np.int32, count=int(ptr[-1]))
    return ptr, idx


def make_decoder(graph: TannerGraph, schedule: ThresholdSchedule, max_iter: int = DEFAULT_MAX_ITER,
                 backend: Optional[str] = None):
    """Sparse batch decoder bound to one graph; exact for any received word."""
    degs = {len(r) for r in graph.var_adj}
    schedule.validate(degs, max_iter)
    table = np.ascontiguousarray(schedule.table(max_iter, max(degs, default=0)), dtype=np.int32)
    c = graph.csr
    return _module(backend).SparseDecoder(c.var_ptr, c.var_chk, c.chk_ptr, c.chk_var, c.chk_edge, table, max_iter)


def decode_supports(decoder, supports: Sequence[Iterable[int]]) -> tuple[np.ndarray, np.ndarray]:
    """Decode a list of error supports; returns (status int8, iterations int32)."""
    rows = [sorted(set(int(x) for x in s)) for s in supports]
    ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    idx = np.fromiter((x for r in rows for x in r), dtype=np.int32, count=int(ptr[-1]))
    status = np.zeros(len(rows), dtype=np.int8)
    iters = np.zeros(len(rows), dtype=np.int32)
    decoder.decode_supports(ptr, idx, status, iters)
    return status, iters


def decode_fixed_weight(decoder, patterns: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Decode a (P, w) array of sorted supports."""
    patterns = np.ascontiguousarray(patterns, dtype=np.int32)
    status = np.zeros(len(patterns), dtype=np.int8)
    iters = np.zeros(len(patterns), dtype=np.int32)
    if len(patterns) and patterns.shape[1] == 0:
        iters[:] = 1
        return status, iters
    if len(patterns):
        decoder.decode_fixed_weight(patterns, status, iters)
    return status, iters


def unrank_combination(rank: int, n: int, w: int) -> list[int]:
    """The ``rank``-th w-subset of range(n) in lexicographic order."""
    if not 0 <= rank < math.comb(n, w):
        raise ValueError("rank out of range")
    out = []
    x = 0
    for i in range(w):
        while True:
            c = math.comb(n - x - 1, w - i - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return out


def rank_combination(comb: Sequence[int], n: int) -> int:
    w = len(comb)
    rank = 0
    prev = -1
    for i, c in enumerate(comb):
        for x in range(prev + 1, c):
            rank += math.comb(n - x - 1, w - i - 1)
        prev = c
    return rank


def decode_combination_range(decoder, n: int, w: int, start: int, count: int, fail_cap: int = 1000):
    """Decode combinations ``start .. start+count-1`` (lexicographic ranks) of weight w.

    Returns (n_nonconverged, n_miscorrected, failures) where failures is a list
    of (support tuple, status) capped at ``fail_cap``.
    """
    total = math.comb(n, w)
    count = min(count, total - start)
    if count <= 0:
        return 0, 0, []
    first = unrank_combination(start, n, w)
    buf = np.zeros((fail_cap, w), dtype=np.int32)
    st = np.zeros(fail_cap, dtype=np.int8)
    n2, n1, rec = decoder.decode_combinations(first, count, buf, st)
    fails = [(tuple(int(x) for x in buf[i]), int(st[i])) for i in range(rec)]
    return int(n2), int(n1), fails


def connected_subsets(graph: TannerGraph, max_size: int, thr: Sequence[int], prune: Sequence[int],
                      root: int = -1, budget: int = 10**9, max_hits: int = 10**6,
                      backend: Optional[str] = None):
    """Connected sets (under check sharing) whose deficit reaches ``thr[size]``.

    Deficit of S is ``sum of degrees - |N(S)|``. Returns (hits, nodes, exceeded)
    with hits as (size, deficit, members) tuples.
    """
    sptr, sidx = share_csr(graph)
    c = graph.csr
    thr = np.ascontiguousarray(thr, dtype=np.int32)
    prune = np.ascontiguousarray(prune, dtype=np.int32)
    if len(thr) < max_size + 1 or len(prune) < max_size + 1:
        raise ValueError("thr and prune need max_size + 1 entries")
    return _module(backend).connected_subsets(sptr, sidx, c.var_ptr, c.var_chk, graph.n_vars, graph.n_checks,
                                              max_size, thr, prune, root, budget, max_hits)


def even_sets(graph: TannerGraph, max_weight: int, root: int = -1, budget: int = 10**9,
              max_hits: int = 10**6, backend: Optional[str] = None):
    """Minimal nonempty all-even variable sets of size <= max_weight.

    Returns (sets, nodes, exceeded); sets are sorted tuples, sorted.
    """
    c = graph.csr
    raw, nodes, exceeded = _module(backend).minimal_even_sets(
        c.var_ptr, c.var_chk, c.chk_ptr, c.chk_var, graph.n_vars, max_weight, root, budget, max_hits)
    found = sorted({tuple(sorted(s)) for s in raw})
    return [s for s in found if _is_minimal_even(graph, s)], nodes, exceeded


def _is_minimal_even(graph: TannerGraph, s: tuple[int, ...]) -> bool:
    for k in range(1, len(s)):
        for sub in combinations(s, k):
            if all(d % 2 == 0 for d in graph.induced_check_degrees(sub).values()):
                return False
    return True
