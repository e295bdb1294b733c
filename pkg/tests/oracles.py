"""Naive full-subset oracles, written independently of the package's search code."""
from __future__ import annotations

from itertools import combinations, product

import numpy as np

from ldpc_guard.graph import TannerGraph


def masks(g: TannerGraph) -> list[int]:
    return [sum(1 << c for c in row) for row in g.var_adj]


def expansion_fails(g: TannerGraph, y: int, z: int) -> bool:
    mk = masks(g)
    for s in combinations(range(g.n_vars), y):
        acc = 0
        for v in s:
            acc |= mk[v]
        if bin(acc).count("1") < z:
            return True
    return False


def four_sets_with_few_checks(g: TannerGraph, most: int = 11) -> dict[tuple, int]:
    mk = masks(g)
    out = {}
    for s in combinations(range(g.n_vars), 4):
        k = bin(mk[s[0]] | mk[s[1]] | mk[s[2]] | mk[s[3]]).count("1")
        if k <= most:
            out[s] = k
    return out


def ts53_sets(g: TannerGraph) -> set[tuple]:
    """5-sets whose induced graph is two variables joined to each of three others by one check each,
    and the three each have one more check of induced degree one."""
    out = set()
    for s in combinations(range(g.n_vars), 5):
        deg: dict[int, list[int]] = {}
        for v in s:
            for c in g.var_adj[v]:
                deg.setdefault(c, []).append(v)
        sizes = sorted(len(x) for x in deg.values())
        if sizes != [1, 1, 1, 2, 2, 2, 2, 2, 2]:
            continue
        nbr = {v: set() for v in s}
        for vs in deg.values():
            if len(vs) == 2:
                a, b = vs
                nbr[a].add(b)
                nbr[b].add(a)
        hubs = [v for v in s if len(nbr[v]) == 3]
        leaves = [v for v in s if len(nbr[v]) == 2]
        if len(hubs) == 2 and len(leaves) == 3 and all(nbr[x] == set(hubs) for x in leaves):
            out.add(s)
    return out


def nullspace_words(g: TannerGraph) -> list[np.ndarray]:
    """All codewords by Gaussian elimination over GF(2) and enumeration of the null space."""
    H = g.to_matrix().astype(np.uint8) % 2
    m, n = H.shape
    H = H.copy()
    pivots = []
    r = 0
    for c in range(n):
        rows = [i for i in range(r, m) if H[i, c]]
        if not rows:
            continue
        H[[r, rows[0]]] = H[[rows[0], r]]
        for i in range(m):
            if i != r and H[i, c]:
                H[i] ^= H[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.uint8)
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = H[i, f]
        basis.append(x)
    words = []
    for coeffs in product((0, 1), repeat=len(basis)):
        x = np.zeros(n, dtype=np.uint8)
        for a, b in zip(coeffs, basis):
            if a:
                x ^= b
        words.append(x)
    return words


def weight_k_codewords(g: TannerGraph, k: int) -> set[tuple]:
    return {tuple(np.flatnonzero(w).tolist()) for w in nullspace_words(g) if int(w.sum()) == k}


def six_cycles(g: TannerGraph) -> int:
    """Count 6-cycles as (3 variables, 3 distinct checks) pairings."""
    count = 0
    vs = [set(r) for r in g.var_adj]
    for a, b, c in combinations(range(g.n_vars), 3):
        for x in vs[a] & vs[b]:
            for y in vs[b] & vs[c]:
                for z in vs[c] & vs[a]:
                    if len({x, y, z}) == 3:
                        count += 1
    return count
