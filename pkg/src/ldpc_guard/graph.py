"""Tanner graph representation and basic graph queries."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised when adjacency data does not describe a valid Tanner graph."""


@dataclass(frozen=True)
class TannerGraph:
    """Immutable bipartite graph of variable and check nodes.

    Adjacency lists are sorted tuples, so two graphs compare equal exactly
    when they have the same edge set. Build instances through
    :meth:`from_var_adj`, :meth:`from_edges` or :class:`GraphBuilder`.
    """

    n_vars: int
    n_checks: int
    var_adj: tuple[tuple[int, ...], ...]
    check_adj: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.var_adj) != self.n_vars or len(self.check_adj) != self.n_checks:
            raise GraphError("adjacency length does not match node counts")
        seen = [[] for _ in range(self.n_checks)]
        for v, row in enumerate(self.var_adj):
            if list(row) != sorted(set(row)):
                if len(set(row)) != len(row):
                    raise GraphError(f"parallel edge at variable {v}")
                raise GraphError(f"adjacency of variable {v} is not sorted")
            for c in row:
                if not 0 <= c < self.n_checks:
                    raise GraphError(f"check index {c} out of range at variable {v}")
                seen[c].append(v)
        for c, row in enumerate(self.check_adj):
            if tuple(seen[c]) != tuple(row):
                raise GraphError(f"check {c} adjacency inconsistent with variables")

    @classmethod
    def from_var_adj(cls, n_checks: int, var_adj: Iterable[Iterable[int]]) -> "TannerGraph":
        rows = []
        for v, row in enumerate(var_adj):
            row = list(row)
            if len(set(row)) != len(row):
                raise GraphError(f"parallel edge at variable {v}")
            rows.append(tuple(sorted(row)))
        checks: list[list[int]] = [[] for _ in range(n_checks)]
        for v, row in enumerate(rows):
            for c in row:
                if not 0 <= c < n_checks:
                    raise GraphError(f"check index {c} out of range at variable {v}")
                checks[c].append(v)
        return cls(len(rows), n_checks, tuple(rows), tuple(tuple(r) for r in checks))

    @classmethod
    def from_edges(cls, n_vars: int, n_checks: int, edges: Iterable[tuple[int, int]]) -> "TannerGraph":
        rows: list[list[int]] = [[] for _ in range(n_vars)]
        for v, c in edges:
            if not 0 <= v < n_vars:
                raise GraphError(f"variable index {v} out of range")
            rows[v].append(c)
        return cls.from_var_adj(n_checks, rows)

    @classmethod
    def from_matrix(cls, H) -> "TannerGraph":
        """Build from a dense parity-check matrix (rows are checks)."""
        H = np.asarray(H)
        m, n = H.shape
        return cls.from_var_adj(m, [np.flatnonzero(H[:, v]).tolist() for v in range(n)])

    @property
    def n_edges(self) -> int:
        return sum(len(r) for r in self.var_adj)

    def var_degree(self, v: int) -> int:
        return len(self.var_adj[v])

    def check_degree(self, c: int) -> int:
        return len(self.check_adj[c])

    def edges(self) -> list[tuple[int, int]]:
        return [(v, c) for v, row in enumerate(self.var_adj) for c in row]

    def to_matrix(self) -> np.ndarray:
        H = np.zeros((self.n_checks, self.n_vars), dtype=np.uint8)
        for v, row in enumerate(self.var_adj):
            H[list(row), v] = 1
        return H

    @cached_property
    def column_weight(self) -> Optional[int]:
        degs = {len(r) for r in self.var_adj}
        return degs.pop() if len(degs) == 1 else None

    @cached_property
    def csr(self) -> "CSR":
        return CSR.from_graph(self)

    @cached_property
    def share_sets(self) -> tuple[frozenset[int], ...]:
        """Per variable, the other variables sharing at least one check."""
        out = []
        for v, row in enumerate(self.var_adj):
            s = set()
            for c in row:
                s.update(self.check_adj[c])
            s.discard(v)
            out.append(frozenset(s))
        return tuple(out)

    def relabel(self, var_perm: Sequence[int], check_perm: Sequence[int]) -> "TannerGraph":
        """Return the graph with variable v renamed var_perm[v] and check c renamed check_perm[c]."""
        rows: list[list[int]] = [[] for _ in range(self.n_vars)]
        for v, row in enumerate(self.var_adj):
            rows[var_perm[v]] = [check_perm[c] for c in row]
        return TannerGraph.from_var_adj(self.n_checks, rows)

    def induced_check_degrees(self, variables: Iterable[int]) -> Counter:
        """Map each check touching ``variables`` to its degree in the induced subgraph."""
        cnt: Counter = Counter()
        for v in variables:
            cnt.update(self.var_adj[v])
        return cnt


@dataclass(frozen=True)
class CSR:
    """Flat int32 adjacency arrays consumed by the compiled kernels.

    Edge ids follow variable-major order: the edges of variable v are
    ``var_ptr[v]:var_ptr[v+1]``. ``chk_edge`` maps each check-side slot to
    its edge id.
    """

    var_ptr: np.ndarray
    var_chk: np.ndarray
    chk_ptr: np.ndarray
    chk_var: np.ndarray
    chk_edge: np.ndarray

    @classmethod
    def from_graph(cls, g: TannerGraph) -> "CSR":
        var_ptr = np.zeros(g.n_vars + 1, dtype=np.int32)
        var_ptr[1:] = np.cumsum([len(r) for r in g.var_adj])
        var_chk = np.fromiter((c for r in g.var_adj for c in r), dtype=np.int32, count=int(var_ptr[-1]))
        chk_ptr = np.zeros(g.n_checks + 1, dtype=np.int32)
        chk_ptr[1:] = np.cumsum([len(r) for r in g.check_adj])
        chk_var = np.empty(int(chk_ptr[-1]), dtype=np.int32)
        chk_edge = np.empty(int(chk_ptr[-1]), dtype=np.int32)
        fill = chk_ptr[:-1].copy()
        for v in range(g.n_vars):
            for e in range(var_ptr[v], var_ptr[v + 1]):
                c = var_chk[e]
                chk_var[fill[c]] = v
                chk_edge[fill[c]] = e
                fill[c] += 1
        for a in (var_ptr, var_chk, chk_ptr, chk_var, chk_edge):
            a.setflags(write=False)
        return cls(var_ptr, var_chk, chk_ptr, chk_var, chk_edge)


class GraphBuilder:
    """Mutable single-owner graph used during construction; ``seal`` validates."""

    def __init__(self, n_vars: int, n_checks: int):
        self.n_vars = n_vars
        self.n_checks = n_checks
        self.var_adj: list[list[int]] = [[] for _ in range(n_vars)]
        self.check_adj: list[list[int]] = [[] for _ in range(n_checks)]

    def has_edge(self, v: int, c: int) -> bool:
        return c in self.var_adj[v]

    def add_edge(self, v: int, c: int) -> None:
        if self.has_edge(v, c):
            raise GraphError(f"parallel edge ({v}, {c})")
        self.var_adj[v].append(c)
        self.check_adj[c].append(v)

    def remove_edge(self, v: int, c: int) -> None:
        self.var_adj[v].remove(c)
        self.check_adj[c].remove(v)

    def check_degree(self, c: int) -> int:
        return len(self.check_adj[c])

    def seal(self) -> TannerGraph:
        return TannerGraph.from_var_adj(self.n_checks, self.var_adj)


@dataclass(frozen=True)
class DegreeProfile:
    var_degrees: Counter
    check_degrees: Counter
    column_weight: Optional[int]
    max_check_degree: int

    @property
    def is_consistent(self) -> bool:
        return sum(d * k for d, k in self.var_degrees.items()) == sum(
            d * k for d, k in self.check_degrees.items()
        )


def degree_profile(graph: TannerGraph) -> DegreeProfile:
    vd = Counter(len(r) for r in graph.var_adj)
    cd = Counter(len(r) for r in graph.check_adj)
    return DegreeProfile(vd, cd, graph.column_weight, max(cd) if cd else 0)


def girth(graph: TannerGraph) -> Optional[int]:
    """Length of the shortest cycle, or ``None`` when the graph is a forest.

    Runs a BFS from every variable; each BFS is cut off once it can no longer
    beat the best cycle seen so far. Node ids: variables ``0..n-1``, check c
    is ``n + c``.
    """
    n = graph.n_vars
    var_adj, check_adj = graph.var_adj, graph.check_adj
    best = None
    for root in range(n):
        dist = {root: 0}
        parent = {root: -1}
        q = deque([root])
        local = None
        while q:
            u = q.popleft()
            du = dist[u]
            bound = local if best is None or (local is not None and local < best) else best
            if bound is not None and 2 * du >= bound:
                break
            nbrs = var_adj[u] if u < n else check_adj[u - n]
            off = n if u < n else 0
            for w in nbrs:
                w += off
                if w == parent[u]:
                    continue
                if w in dist:
                    cyc = du + dist[w] + 1
                    if local is None or cyc < local:
                        local = cyc
                else:
                    dist[w] = du + 1
                    parent[w] = u
                    q.append(w)
        if local is not None and (best is None or local < best):
            best = local
            if best == 4:
                break
    return best


def check_distance(graph: TannerGraph, v: int, c: int) -> Optional[int]:
    """Edge-count distance from variable v to check c, ``None`` if unreachable."""
    n = graph.n_vars
    target = n + c
    dist = {v: 0}
    q = deque([v])
    while q:
        u = q.popleft()
        nbrs = graph.var_adj[u] if u < n else graph.check_adj[u - n]
        off = n if u < n else 0
        for w in nbrs:
            w += off
            if w not in dist:
                dist[w] = dist[u] + 1
                if w == target:
                    return dist[w]
                q.append(w)
    return None


def checks_within(var_adj, check_adj, v: int, depth: int) -> set[int]:
    """Checks at edge distance <= depth from variable v, on raw adjacency lists."""
    seen_v = {v}
    found: set[int] = set()
    frontier = [v]
    d = 1
    while frontier and d <= depth:
        nxt_checks = []
        for u in frontier:
            for c in var_adj[u]:
                if c not in found:
                    found.add(c)
                    nxt_checks.append(c)
        d += 1
        if d > depth:
            break
        frontier = []
        for c in nxt_checks:
            for u in check_adj[c]:
                if u not in seen_v:
                    seen_v.add(u)
                    frontier.append(u)
        d += 1
    return found


def tree_checks_within(graph: TannerGraph, v: int, depth: int) -> set[int]:
    """Checks reached by expanding the BFS tree rooted at v to ``depth`` edges."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return checks_within(graph.var_adj, graph.check_adj, v, depth)
