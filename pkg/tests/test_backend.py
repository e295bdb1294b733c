import math
import os
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ldpc_guard import backend
from ldpc_guard.structures import _thresholds

from conftest import random_graph, random_girth6


def test_backend_name():
    assert backend.BACKEND in ("compiled", "python")
    assert "python" in backend.IMPLEMENTATIONS
    with pytest.raises(ValueError):
        backend._module("fortran")


def test_pure_env_forces_fallback():
    env = dict(os.environ, LDPC_GUARD_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import ldpc_guard; print(ldpc_guard.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 25).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.integers(0, math.comb(t[0], t[1]) - 1))))
def test_rank_unrank_round_trip(args):
    n, w, r = args
    comb = backend.unrank_combination(r, n, w)
    assert comb == sorted(set(comb)) and len(comb) == w
    assert backend.rank_combination(comb, n) == r


def test_unrank_is_lexicographic():
    assert [backend.unrank_combination(i, 5, 2) for i in range(10)] == [list(c) for c in combinations(range(5), 2)]


def test_combination_ranges_partition():
    g = random_graph(np.random.default_rng(3), 22, 16, 3)
    from ldpc_guard.decoder import GALLAGER_A
    dec = backend.make_decoder(g, GALLAGER_A)
    whole = backend.decode_combination_range(dec, 22, 3, 0, math.comb(22, 3), 10_000)
    parts = [backend.decode_combination_range(dec, 22, 3, s, 97, 10_000) for s in range(0, math.comb(22, 3), 97)]
    assert sum(p[0] for p in parts) == whole[0]
    assert sum(p[1] for p in parts) == whole[1]
    assert [f for p in parts for f in p[2]] == whole[2]


@pytest.mark.skipif("compiled" not in backend.IMPLEMENTATIONS, reason="extension not built")
@pytest.mark.parametrize("seed", range(6))
def test_connected_subsets_backends_agree(seed):
    rng = np.random.default_rng(seed)
    g = random_girth6(rng, 24, 20, 3)
    thr, prune = _thresholds(3, 5, 7, True)
    a = backend.connected_subsets(g, 5, thr, prune, backend="compiled")
    b = backend.connected_subsets(g, 5, thr, prune, backend="python")
    assert a == b


@pytest.mark.skipif("compiled" not in backend.IMPLEMENTATIONS, reason="extension not built")
@pytest.mark.parametrize("seed", range(6))
def test_even_sets_backends_agree(seed):
    g = random_graph(np.random.default_rng(seed), 22, 14, 3)
    assert backend.even_sets(g, 8, backend="compiled") == backend.even_sets(g, 8, backend="python")


def test_connected_subsets_budget_flag():
    g = random_girth6(np.random.default_rng(0), 24, 20, 3)
    thr, prune = _thresholds(3, 5, 7, True)
    hits, nodes, exceeded = backend.connected_subsets(g, 5, [0] * 6, [0] * 6, budget=50)
    assert exceeded and nodes > 50


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_even_sets_match_nullspace_minimal_supports(seed):
    g = random_graph(np.random.default_rng(seed), 14, 10, 3)
    H = g.to_matrix().astype(np.int64)
    even = []
    for k in range(1, 7):
        for s in combinations(range(14), k):
            if not ((H[:, list(s)].sum(axis=1)) % 2).any():
                even.append(set(s))
    minimal = sorted(tuple(sorted(s)) for s in even if not any(t < s for t in even))
    got, _, exceeded = backend.even_sets(g, 6)
    assert not exceeded
    assert got == minimal
