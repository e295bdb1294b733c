"""Progressive edge growth with forbidden-subgraph rejection.

Variables are processed in index order. The first edge of a variable goes
to a lowest-degree check; each later edge goes to a lowest-degree check
outside the depth-limited tree around the variable, skipping candidates that
would complete a forbidden structure. Ties are broken by a seeded generator,
so equal specs give equal graphs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import GraphBuilder, TannerGraph, checks_within, degree_profile, girth
from .structures import (
    LocalView,
    StructureReport,
    SubgraphWitness,
    analyze,
    find_weight8_codewords,
    local_53,
    local_dense4,
    split_names,
)

log = logging.getLogger(__name__)

KNOWN_AVOID = {"TS(5,3)", "TS(8,0)", "Fig13A", "Fig13B"}


class ConstructionError(RuntimeError):
    pass


class CandidateExhausted(ConstructionError):
    def __init__(self, variable: int, edge: int):
        super().__init__(f"no admissible check for edge {edge} of variable {variable}")
        self.variable = variable
        self.edge = edge


class RetriesExhausted(ConstructionError):
    def __init__(self, retries: int, codewords: list[SubgraphWitness]):
        super().__init__(f"weight-8 codewords persisted after {retries} retries")
        self.retries = retries
        self.codewords = codewords


class PostVerificationFailed(ConstructionError):
    def __init__(self, report: StructureReport):
        failed = [n for n, c in report.conditions.items() if not c.passed]
        super().__init__(f"post-verification failed: {failed}")
        self.report = report


def parse_avoid(text: str) -> frozenset:
    return frozenset(split_names(text))


@dataclass(frozen=True)
class ConstructionSpec:
    n_vars: int
    n_checks: int
    column_weight: int = 3
    max_check_degree: int = 7
    tree_depth: Optional[int] = None
    avoid: Optional[frozenset] = None
    rng_seed: int = 0
    max_retries: int = 10
    debug: bool = False

    def __post_init__(self):
        if self.column_weight < 2:
            raise ValueError("column weight must be at least 2")
        if self.n_vars < 1 or self.n_checks < self.column_weight:
            raise ValueError("need n_vars >= 1 and n_checks >= column weight")
        if self.n_vars * self.column_weight > self.n_checks * self.max_check_degree:
            raise ValueError("n_vars * gamma exceeds n_checks * max_check_degree")
        if self.tree_depth is not None and self.tree_depth < 1:
            raise ValueError("tree_depth must be >= 1")
        unknown = set(self.avoid or ()) - KNOWN_AVOID
        if unknown:
            raise ValueError(f"unknown structures in avoid: {sorted(unknown)}")

    @property
    def depth(self) -> int:
        if self.tree_depth is not None:
            return self.tree_depth
        return 6 if self.column_weight == 3 else 4

    @property
    def avoid_set(self) -> frozenset:
        if self.avoid is not None:
            return frozenset(self.avoid)
        if self.column_weight == 3:
            return frozenset({"TS(5,3)", "TS(8,0)"})
        if self.column_weight == 4:
            return frozenset({"Fig13A", "Fig13B"})
        return frozenset()

    @property
    def girth_target(self) -> int:
        # a check at distance d closes a cycle of length d + 1
        d = self.depth
        return d + 2 if d % 2 == 0 else d + 1

    def conditions(self) -> tuple[str, ...]:
        out = [f"girth>={self.girth_target}"]
        av = self.avoid_set
        if "TS(5,3)" in av:
            out.append("no-(5,3)")
        if "TS(8,0)" in av:
            out.append("no-(8,0)")
        if av & {"Fig13A", "Fig13B"}:
            out.append("4->12")
        return tuple(out)

    def to_keyvalue(self) -> str:
        kv = {
            "n": self.n_vars, "m": self.n_checks, "gamma": self.column_weight,
            "max_check_degree": self.max_check_degree, "depth": self.depth,
            "seed": self.rng_seed, "retries": self.max_retries,
            "avoid": ",".join(sorted(self.avoid_set)),
        }
        return "".join(f"{k}={v}\n" for k, v in kv.items())

    @classmethod
    def from_keyvalue(cls, text: str) -> "ConstructionSpec":
        """Parse a flat ``key=value`` config (keys n, m, gamma, max_check_degree, depth, seed, retries, avoid)."""
        raw: dict[str, str] = {}
        for no, ln in enumerate(text.splitlines(), 1):
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            if "=" not in ln:
                raise ValueError(f"line {no}: expected key=value")
            k, v = (s.strip() for s in ln.split("=", 1))
            raw[k] = v
        allowed = {"n", "m", "gamma", "max_check_degree", "depth", "seed", "retries", "avoid"}
        extra = set(raw) - allowed
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        if "n" not in raw or "m" not in raw:
            raise ValueError("config needs n and m")
        avoid = None
        if "avoid" in raw:
            avoid = parse_avoid(raw["avoid"])
        return cls(
            n_vars=int(raw["n"]), n_checks=int(raw["m"]),
            column_weight=int(raw.get("gamma", 3)),
            max_check_degree=int(raw.get("max_check_degree", 7)),
            tree_depth=int(raw["depth"]) if "depth" in raw else None,
            avoid=avoid, rng_seed=int(raw.get("seed", 0)),
            max_retries=int(raw.get("retries", 10)),
        )


@dataclass
class ConstructionResult:
    graph: TannerGraph
    report: StructureReport
    seed_used: int
    retries_used: int
    spec: Optional[ConstructionSpec] = field(default=None, repr=False)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reason: str = ""
    witness: tuple[int, ...] = ()


def incremental_forbidden_check(builder: GraphBuilder, j: int, c: int, avoid: frozenset,
                                girth_target: int = 0, gamma: int = 0) -> Admissibility:
    """Would adding edge (j, c) create a forbidden structure through j?

    Checks, in order: parallel edge, a cycle shorter than ``girth_target``,
    then the structures named in ``avoid`` among subsets containing j.
    With ``gamma`` set, j's still-missing edges count as private checks.
    """
    if builder.has_edge(j, c):
        return Admissibility(False, "parallel")
    if girth_target:
        near = checks_within(builder.var_adj, builder.check_adj, j, girth_target - 3)
        if c in near:
            return Admissibility(False, f"cycle<{girth_target}")
    builder.add_edge(j, c)
    try:
        view = LocalView(builder.var_adj, builder.check_adj, gamma)
        if "TS(5,3)" in avoid:
            w = local_53(view, j)
            if w:
                return Admissibility(False, "TS(5,3)", w)
        if avoid & {"Fig13A", "Fig13B"}:
            w = local_dense4(view, j)
            if w:
                return Admissibility(False, "Fig13", w)
    finally:
        builder.remove_edge(j, c)
    return Admissibility(True)


def _grow(spec: ConstructionSpec, seed: int) -> TannerGraph:
    rng = np.random.default_rng(seed)
    n, m, gamma, rho = spec.n_vars, spec.n_checks, spec.column_weight, spec.max_check_degree
    b = GraphBuilder(n, m)
    deg = np.zeros(m, dtype=np.int64)
    avoid = spec.avoid_set
    for j in range(n):
        for k in range(gamma):
            if k == 0:
                pool = np.flatnonzero(deg < rho)
            else:
                tree = checks_within(b.var_adj, b.check_adj, j, spec.depth)
                mask = deg < rho
                if tree:
                    mask[list(tree)] = False
                pool = np.flatnonzero(mask)
            placed = False
            # lowest degree first, random among ties; rejected candidates drop out
            for d in np.unique(deg[pool]):
                level = pool[deg[pool] == d]
                level = level[rng.permutation(len(level))]
                for c in level.tolist():
                    if k > 0 and avoid:
                        if not incremental_forbidden_check(b, j, c, avoid, gamma=gamma).admissible:
                            continue
                    b.add_edge(j, c)
                    deg[c] += 1
                    placed = True
                    break
                if placed:
                    break
            if not placed:
                raise CandidateExhausted(j, k + 1)
        if spec.debug:
            sub = GraphBuilder(j + 1, m)
            for v in range(j + 1):
                for c in b.var_adj[v]:
                    sub.add_edge(v, c)
            g = girth(sub.seal())
            assert g is None or g >= spec.girth_target, f"girth {g} after variable {j}"
    return b.seal()


def peg_construct(spec: ConstructionSpec) -> ConstructionResult:
    """Build a graph for ``spec`` and certify it with a from-scratch structure analysis."""
    seed = spec.rng_seed
    codewords: list[SubgraphWitness] = []
    for attempt in range(spec.max_retries + 1):
        graph = _grow(spec, seed)
        if "TS(8,0)" in spec.avoid_set:
            codewords = find_weight8_codewords(graph)
            if codewords:
                log.info("seed %d: %d weight-8 codewords, reseeding", seed, len(codewords))
                seed += 1
                continue
        report = analyze(graph, spec.conditions())
        if not report.all_pass:
            raise PostVerificationFailed(report)
        return ConstructionResult(graph, report, seed, attempt, spec)
    raise RetriesExhausted(spec.max_retries, codewords)


def plain_peg(n_vars: int, n_checks: int, column_weight: int = 3, max_check_degree: int = 7,
              seed: int = 0) -> TannerGraph:
    """Standard PEG: each edge goes to a lowest-degree check as far from the variable as possible.

    No forbidden-structure rejection; used as a comparison baseline.
    """
    rng = np.random.default_rng(seed)
    b = GraphBuilder(n_vars, n_checks)
    deg = np.zeros(n_checks, dtype=np.int64)
    for j in range(n_vars):
        for k in range(column_weight):
            open_ = deg < max_check_degree
            if k == 0:
                pool = np.flatnonzero(open_)
            else:
                reached: set[int] = set()
                depth = 1
                pool = None
                while True:
                    nxt = checks_within(b.var_adj, b.check_adj, j, depth)
                    outside = open_.copy()
                    outside[list(nxt)] = False
                    if not outside.any() or len(nxt) == len(reached):
                        # stop at the last depth that still left some check unreached
                        if pool is None or len(nxt) == len(reached):
                            pool = np.flatnonzero(outside) if outside.any() else pool
                        break
                    pool = np.flatnonzero(outside)
                    reached = nxt
                    depth += 2
                if pool is None or not len(pool):
                    pool = np.flatnonzero(open_ & ~np.isin(np.arange(n_checks), b.var_adj[j]))
            if not len(pool):
                raise CandidateExhausted(j, k + 1)
            low = pool[deg[pool] == deg[pool].min()]
            c = int(low[rng.integers(len(low))])
            b.add_edge(j, c)
            deg[c] += 1
    return b.seal()


def describe(result: ConstructionResult) -> str:
    prof = degree_profile(result.graph)
    lines = [
        f"seed_used={result.seed_used}",
        f"retries_used={result.retries_used}",
        f"n={result.graph.n_vars}",
        f"m={result.graph.n_checks}",
        f"edges={result.graph.n_edges}",
        "check_degrees=" + ",".join(f"{d}:{k}" for d, k in sorted(prof.check_degrees.items())),
    ]
    return "\n".join(lines) + "\n" + result.report.to_keyvalue()
