"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python benchmarks/bench_backends.py [--n 150 --m 95]``. Both
backends work on the same PEG graph; results are checked for equality
before timings are printed.
"""
from __future__ import annotations

import argparse
import math
import time

import numpy as np

from ldpc_guard import backend
from ldpc_guard.construction import ConstructionSpec, peg_construct
from ldpc_guard.decoder import GALLAGER_A
from ldpc_guard.structures import _thresholds


def _time(fn, repeat=3):
    best, out = math.inf, None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=150)
    ap.add_argument("--m", type=int, default=95)
    ap.add_argument("--patterns", type=int, default=20_000)
    a = ap.parse_args(argv)
    if "compiled" not in backend.IMPLEMENTATIONS:
        print("compiled backend not built; nothing to compare")
        return 1
    g = peg_construct(ConstructionSpec(a.n, a.m, 3, 7, rng_seed=0)).graph
    thr, prune = _thresholds(3, 5, 3 * 5 - 9 + 1, True)
    cases = {
        "decode weight-3 range": lambda b: backend.decode_combination_range(
            backend.make_decoder(g, GALLAGER_A, 25, backend=b), g.n_vars, 3, 0, a.patterns),
        "connected 5-subsets": lambda b: backend.connected_subsets(g, 5, thr, prune, backend=b)[:2],
        "even sets <= 8": lambda b: backend.even_sets(g, 8, backend=b)[:2],
    }
    print(f"graph n={g.n_vars} m={g.n_checks}")
    print(f"{'kernel':<24}{'compiled s':>12}{'python s':>12}{'speedup':>10}")
    for name, fn in cases.items():
        tc, rc = _time(lambda: fn("compiled"))
        tp, rp = _time(lambda: fn("python"), repeat=1)
        assert rc == rp, f"{name}: backends disagree"
        print(f"{name:<24}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
