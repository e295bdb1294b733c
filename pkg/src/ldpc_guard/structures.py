"""Detectors for short cycles, small trapping-set subgraphs and expansion conditions.

Most searches work with the *deficit* of a variable set S,
``D(S) = sum of degrees in S - |N(S)|``. For a column-weight-gamma graph a
set of y variables has fewer than z neighbours exactly when
``D(S) >= gamma*y - z + 1``. D never decreases when a variable is added, and
for disjoint A, B we have ``D(A | B) >= D(A) + D(B)``, with equality when no
check touches both. Both facts keep the searches exact while letting them
enumerate only sets that are connected under check sharing.
"""
from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import backend
from .graph import GraphError, TannerGraph, girth as graph_girth

DEFAULT_BUDGET = 1_000_000_000

CW3_CONDITIONS = ("girth>=8", "no-(5,3)", "no-(8,0)")
CW4_CONDITIONS = ("girth>=6", "4->11", "5->12", "6->14", "7->16", "8->18", "4->12")
EXPANSION_RE = re.compile(r"^(\d+)->(\d+)$")


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    BUDGET_EXCEEDED = "budget-exceeded"


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, nodes: int):
        super().__init__(f"{what}: search budget exceeded after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SubgraphWitness:
    variables: tuple[int, ...]
    even_checks: tuple[int, ...]
    odd_checks: tuple[int, ...]
    kind: str
    external_share_ok: Optional[bool] = None

    @classmethod
    def of(cls, graph: TannerGraph, variables: Iterable[int], kind: str,
           external_share_ok: Optional[bool] = None) -> "SubgraphWitness":
        vs = tuple(sorted(set(variables)))
        deg = graph.induced_check_degrees(vs)
        even = tuple(sorted(c for c, d in deg.items() if d % 2 == 0))
        odd = tuple(sorted(c for c, d in deg.items() if d % 2 == 1))
        return cls(vs, even, odd, kind, external_share_ok)

    @property
    def a(self) -> int:
        return len(self.variables)

    @property
    def b(self) -> int:
        return len(self.odd_checks)

    @property
    def n_checks(self) -> int:
        return len(self.even_checks) + len(self.odd_checks)

    def sort_key(self):
        return (self.kind, self.variables)


@dataclass
class ConditionResult:
    name: str
    verdict: Verdict
    witness: Optional[SubgraphWitness] = None
    count: Optional[int] = None
    nodes: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


@dataclass
class StructureReport:
    girth: Optional[int]
    witnesses: list[SubgraphWitness] = field(default_factory=list)
    conditions: dict[str, ConditionResult] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def counts(self) -> Counter:
        return Counter(w.kind for w in self.witnesses)

    def to_text(self) -> str:
        lines = [f"girth: {'acyclic' if self.girth is None else self.girth}"]
        for name, c in self.conditions.items():
            extra = f" count={c.count}" if c.count is not None else ""
            lines.append(f"condition {name}: {c.verdict.value}{extra}")
            if c.witness is not None:
                w = c.witness
                lines.append(f"  witness {w.kind} variables={list(w.variables)} checks={w.n_checks}")
        for kind, k in sorted(self.counts().items()):
            lines.append(f"found {kind}: {k}")
        return "\n".join(lines) + "\n"

    def to_keyvalue(self) -> str:
        kv = [("girth", "acyclic" if self.girth is None else str(self.girth)),
              ("witnesses", str(len(self.witnesses)))]
        index = {}
        for i, w in enumerate(self.witnesses):
            index[w] = i
            kv += [
                (f"witness.{i}.kind", w.kind),
                (f"witness.{i}.variables", _join(w.variables)),
                (f"witness.{i}.even_checks", _join(w.even_checks)),
                (f"witness.{i}.odd_checks", _join(w.odd_checks)),
            ]
            if w.external_share_ok is not None:
                kv.append((f"witness.{i}.external_share_ok", str(w.external_share_ok).lower()))
        for name, c in self.conditions.items():
            kv.append((f"condition.{name}", c.verdict.value))
            if c.count is not None:
                kv.append((f"condition.{name}.count", str(c.count)))
            if c.witness is not None:
                w = c.witness
                kv += [(f"condition.{name}.witness.kind", w.kind),
                       (f"condition.{name}.witness.variables", _join(w.variables))]
        for kind, k in sorted(self.counts().items()):
            kv.append((f"count.{kind}", str(k)))
        return "".join(f"{k}={v}\n" for k, v in kv)

    @staticmethod
    def parse_keyvalue(text: str) -> dict[str, str]:
        out = {}
        for ln in text.splitlines():
            if ln.strip() and not ln.startswith("#"):
                # condition names may contain '=' (girth>=8); values never do
                k, _, v = ln.rpartition("=")
                out[k.strip()] = v.strip()
        return out


def split_names(text: str) -> list[str]:
    """Split ``no-(5,3),4->12`` on the commas outside parentheses."""
    return [t.strip() for t in re.findall(r"(?:[^,(]|\([^)]*\))+", text) if t.strip()]


def _join(xs) -> str:
    return ",".join(map(str, xs))


def _require_weight(graph: TannerGraph, allowed: Sequence[int]) -> int:
    g = graph.column_weight
    if g not in allowed:
        raise GraphError(f"requires column weight in {list(allowed)}, got {g}")
    return g


# deficit bounds -------------------------------------------------------------

def _gain_cap(gamma: int, i: int, girth6: bool) -> int:
    # the (i+1)-th vertex of a connected ordering meets at most one check per earlier vertex
    return min(gamma, i) if girth6 else gamma


def _connected_cap(gamma: int, s: int, girth6: bool) -> int:
    return sum(_gain_cap(gamma, i, girth6) for i in range(1, s))


def _best_combination(caps: Sequence[int], r: int) -> int:
    """Largest sum of caps[s_i] over parts s_i >= 2 with sum s_i <= r."""
    best = [0] * (r + 1)
    for t in range(2, r + 1):
        best[t] = max(best[t - 1], max(caps[s] + best[t - s] for s in range(2, t + 1)))
    return best[r]


def _thresholds(gamma: int, y: int, need: int, girth6: bool) -> tuple[list[int], list[int]]:
    """Per-size deficit thresholds a component of a violating family must reach, and prune bounds."""
    caps = [0, 0] + [_connected_cap(gamma, s, girth6) for s in range(2, y + 1)]
    big = 1 << 30
    thr = [big, big]
    for s in range(2, y + 1):
        thr.append(max(1, need - _best_combination(caps, y - s)))
    prune = []
    for k in range(y + 1):
        bound = big
        for s in range(k + 1, y + 1):
            grow = sum(_gain_cap(gamma, i, girth6) for i in range(k, s))
            bound = min(bound, thr[s] - grow)
        prune.append(bound)
    return thr, prune


def _deficit(graph: TannerGraph, vs: Iterable[int]) -> int:
    vs = list(vs)
    return sum(len(graph.var_adj[v]) for v in vs) - len(graph.induced_check_degrees(vs))


def _girth_at_least6(graph: TannerGraph) -> bool:
    g = graph_girth(graph)
    return g is None or g >= 6


# expansion ------------------------------------------------------------------

def check_expansion(graph: TannerGraph, y: int, z: int, budget: int = DEFAULT_BUDGET,
                    raise_on_budget: bool = False) -> ConditionResult:
    """Exact test that every y-subset of variables has at least z neighbouring checks.

    Enumerates connected sets whose deficit can still contribute to a
    violation, then combines disjoint ones. Returns a pass, a fail carrying
    a violating y-subset, or ``budget-exceeded`` when ``budget`` search nodes
    did not suffice.
    """
    gamma = _require_weight(graph, range(1, 64))
    name = f"{y}->{z}"
    if not 1 <= y <= graph.n_vars:
        raise ValueError(f"y={y} must lie in [1, n_vars]")
    need = gamma * y - z + 1
    if need <= 0:
        return ConditionResult(name, Verdict.PASS)
    if y < 2:
        return ConditionResult(name, Verdict.PASS)
    girth6 = _girth_at_least6(graph)
    thr, prune = _thresholds(gamma, y, need, girth6)
    hits, nodes, exceeded = backend.connected_subsets(graph, y, thr, prune, budget=budget)
    if exceeded:
        if raise_on_budget:
            raise BudgetExceeded(name, nodes)
        return ConditionResult(name, Verdict.BUDGET_EXCEEDED, nodes=nodes)
    family = _combine(hits, y, need)
    if family is None:
        return ConditionResult(name, Verdict.PASS, nodes=nodes)
    members = set().union(*family)
    witness = _pad_min_neighbours(graph, members, y)
    return ConditionResult(name, Verdict.FAIL, SubgraphWitness.of(graph, witness, f"ExpansionViolation({y},{z})"),
                           nodes=nodes)


def _combine(hits, y: int, need: int) -> Optional[list[tuple[int, ...]]]:
    """Vertex-disjoint hits with total size <= y and total deficit >= need, or None."""
    items = sorted({(d, m) for s, d, m in hits}, key=lambda t: (-t[0], len(t[1]), t[1]))
    for d, m in items:
        if d >= need:
            return [m]
    best_by_size = Counter()
    for d, m in items:
        best_by_size[len(m)] = max(best_by_size[len(m)], d)

    def bound(r: int) -> int:
        best = [0] * (r + 1)
        for t in range(2, r + 1):
            best[t] = max([best[t - 1]] + [best_by_size[s] + best[t - s] for s in range(2, t + 1) if s in best_by_size])
        return best[r]

    bounds = [bound(r) for r in range(y + 1)]
    chosen: list[tuple[int, ...]] = []

    def dfs(start: int, used: set, size: int, total: int) -> bool:
        if total >= need:
            return True
        if total + bounds[y - size] < need:
            return False
        for i in range(start, len(items)):
            d, m = items[i]
            if size + len(m) > y or used.intersection(m):
                continue
            chosen.append(m)
            if dfs(i + 1, used | set(m), size + len(m), total + d):
                return True
            chosen.pop()
        return False

    return list(chosen) if dfs(0, set(), 0, 0) else None


def _pad_min_neighbours(graph: TannerGraph, members: set, y: int) -> list[int]:
    out = set(members)
    touched = set(graph.induced_check_degrees(out))
    while len(out) < y:
        best, best_gain = None, -1
        for v in range(graph.n_vars):
            if v in out:
                continue
            g = sum(1 for c in graph.var_adj[v] if c in touched)
            if g > best_gain:
                best, best_gain = v, g
        out.add(best)
        touched.update(graph.var_adj[best])
    return sorted(out)


def expansion_violations_bruteforce(graph: TannerGraph, y: int, z: int) -> list[tuple[int, ...]]:
    """Every y-subset with fewer than z neighbours; reference oracle for small graphs."""
    masks = [sum(1 << c for c in row) for row in graph.var_adj]
    out = []
    for sub in combinations(range(graph.n_vars), y):
        acc = 0
        for v in sub:
            acc |= masks[v]
        if acc.bit_count() < z:
            out.append(sub)
    return out


# six-cycles -----------------------------------------------------------------

def find_six_cycles(graph: TannerGraph) -> list[SubgraphWitness]:
    """All 6-cycles, each as three variables and three distinct checks."""
    share = graph.share_sets
    var_sets = [set(r) for r in graph.var_adj]
    out = []
    for a in range(graph.n_vars):
        for b in sorted(u for u in share[a] if u > a):
            ab = var_sets[a] & var_sets[b]
            for c in sorted(u for u in share[a] & share[b] if u > b):
                bc = var_sets[b] & var_sets[c]
                ca = var_sets[c] & var_sets[a]
                for x in ab:
                    for y_ in bc:
                        for w in ca:
                            if len({x, y_, w}) == 3:
                                out.append(SubgraphWitness((a, b, c), (), tuple(sorted((x, y_, w))), "Cycle(6)"))
    return out


def six_cycle_count_trace(graph: TannerGraph) -> int:
    """Number of 6-cycles from traces of the variable co-occurrence matrix (independent oracle)."""
    import numpy as np

    H = graph.to_matrix().astype(np.int64)
    A = H.T @ H
    np.fill_diagonal(A, 0)
    closed = int(np.trace(A @ A @ A)) // 6
    # remove check choices where two or three of the cycle's checks coincide
    d = H.sum(axis=1)
    pair_sum = 0
    for c in range(graph.n_checks):
        vs = graph.check_adj[c]
        s = sum(int(A[u, w]) for u, w in combinations(vs, 2))
        pair_sum += (int(d[c]) - 2) * s
    triples = sum(int(x) * (int(x) - 1) * (int(x) - 2) // 6 for x in d)
    return closed - pair_sum + 2 * triples


# three-error configurations -------------------------------------------------

CONFIG_LABELS = ("disjoint", "one_pair", "path", "six_cycle", "common_check")


def classify_three_error_subgraph(graph: TannerGraph, triple: Sequence[int]) -> str:
    """Label the subgraph induced by three variables by how they share checks.

    Returns one of ``CONFIG_LABELS`` or ``"cycle4"`` when two of them share
    more than one check.
    """
    a, b, c = triple
    if len({a, b, c}) != 3:
        raise ValueError("triple must have distinct variables")
    sa, sb, sc = (set(graph.var_adj[v]) for v in (a, b, c))
    shares = [sa & sb, sb & sc, sa & sc]
    if any(len(s) >= 2 for s in shares):
        return "cycle4"
    k = sum(1 for s in shares if s)
    if k == 3:
        return "common_check" if len(set().union(*shares)) == 1 else "six_cycle"
    return CONFIG_LABELS[k]


@dataclass(frozen=True)
class TrappingSetCheck:
    holds: bool
    condition_a: bool
    condition_b: bool
    degenerate: bool = False


def verify_theorem1_conditions(graph: TannerGraph, variables: Iterable[int]) -> TrappingSetCheck:
    """Sufficient structural conditions for an induced subgraph to be a trapping set (cw3).

    (a) each variable has at least two even and at most one odd induced check;
    (b) no two odd induced checks meet a common variable outside the set.
    """
    _require_weight(graph, (3,))
    vs = set(variables)
    if not vs:
        return TrappingSetCheck(True, True, True, degenerate=True)
    deg = graph.induced_check_degrees(vs)
    cond_a = True
    for v in vs:
        ev = sum(1 for c in graph.var_adj[v] if deg[c] % 2 == 0)
        od = len(graph.var_adj[v]) - ev
        if ev < 2 or od > 1:
            cond_a = False
    cond_b = _external_share_ok(graph, vs, [c for c, d in deg.items() if d % 2 == 1])
    return TrappingSetCheck(cond_a and cond_b, cond_a, cond_b)


def _external_share_ok(graph: TannerGraph, vs: set, odd: Iterable[int]) -> bool:
    seen: set[int] = set()
    for c in odd:
        outside = {u for u in graph.check_adj[c] if u not in vs}
        if outside & seen:
            return False
        seen |= outside
    return True


# (5,3) ----------------------------------------------------------------------

def _is_53(graph: TannerGraph, two: tuple[int, int], three: Sequence[int]) -> bool:
    vs = set(two) | set(three)
    deg = graph.induced_check_degrees(vs)
    if sorted(deg.values()) != [1, 1, 1, 2, 2, 2, 2, 2, 2]:
        return False
    # the six degree-2 checks must be exactly the edges of the complete bipartite two-by-three graph
    pairs = set()
    for c, d in deg.items():
        if d == 2:
            u, w = (x for x in graph.check_adj[c] if x in vs)
            pairs.add(frozenset((u, w)))
    return pairs == {frozenset((p, q)) for p in two for q in three}


def find_53_structures(graph: TannerGraph, budget: int = DEFAULT_BUDGET) -> list[SubgraphWitness]:
    """All (5,3) trapping-set subgraphs shaped like the standard one.

    Five variables, six checks of induced degree 2 joining two of them to
    each of the other three, and one degree-1 check on each of the three.
    """
    _require_weight(graph, (3,))
    share = graph.share_sets
    out = []
    nodes = 0
    for p in range(graph.n_vars):
        common: dict[int, list[int]] = {}
        for u in share[p]:
            for q in share[u]:
                if q > p:
                    common.setdefault(q, []).append(u)
        for q, us in sorted(common.items()):
            us = sorted(set(us) - {p, q})
            for three in combinations(us, 3):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded("find_53_structures", nodes)
                if _is_53(graph, (p, q), three):
                    vs = {p, q, *three}
                    deg = graph.induced_check_degrees(vs)
                    ok = _external_share_ok(graph, vs, [c for c, d in deg.items() if d == 1])
                    out.append(SubgraphWitness.of(graph, vs, "TS(5,3)", ok))
    return sorted(out, key=SubgraphWitness.sort_key)


class LocalView:
    """Read access to builder adjacency lists with cached sharing sets."""

    def __init__(self, var_adj, check_adj, gamma: int = 0):
        self.var_adj = var_adj
        self.check_adj = check_adj
        self.gamma = gamma
        self._share: dict[int, set[int]] = {}

    def share(self, v: int) -> set[int]:
        s = self._share.get(v)
        if s is None:
            s = set()
            for c in self.var_adj[v]:
                s.update(self.check_adj[c])
            s.discard(v)
            self._share[v] = s
        return s

    def induced(self, vs) -> Counter:
        cnt: Counter = Counter()
        for v in vs:
            cnt.update(self.var_adj[v])
        return cnt

    def deficit(self, vs) -> int:
        return sum(len(self.var_adj[v]) for v in vs) - len(self.induced(vs))


def _shaped_53(view: LocalView, two, three, j: int = -1) -> bool:
    vs = set(two) | set(three)
    deg = view.induced(vs)
    # edges j still lacks will land outside the set (girth keeps them off its checks)
    pending = max(0, view.gamma - len(view.var_adj[j])) if j >= 0 else 0
    if sorted(list(deg.values()) + [1] * pending) != [1, 1, 1, 2, 2, 2, 2, 2, 2]:
        return False
    pairs = set()
    for c, d in deg.items():
        if d == 2:
            u, w = (x for x in view.check_adj[c] if x in vs)
            pairs.add(frozenset((u, w)))
    return pairs == {frozenset((p, q)) for p in two for q in three}


def local_53(view: LocalView, j: int) -> Optional[tuple[int, ...]]:
    """A (5,3) shape containing variable j, or None.

    When ``view.gamma`` exceeds j's current degree, the missing edges are
    counted as private degree-1 checks, so a set that can only end up as a
    (5,3) is reported before j is complete.
    """
    sj = view.share(j)
    # j on the two-variable side
    second = set()
    for u in sj:
        second |= view.share(u)
    second -= {j}
    for q in sorted(second):
        common = sorted((sj & view.share(q)) - {q})
        for three in combinations(common, 3):
            if _shaped_53(view, (j, q), three, j):
                return tuple(sorted((j, q, *three)))
    # j on the three-variable side
    for p, q in combinations(sorted(sj), 2):
        common = sorted((view.share(p) & view.share(q)) - {j, p, q})
        for a, b in combinations(common, 2):
            if _shaped_53(view, (p, q), (j, a, b), j):
                return tuple(sorted((j, p, q, a, b)))
    return None


def local_dense4(view: LocalView, j: int, need: int = 5) -> Optional[tuple[int, ...]]:
    """A 4-set containing j with deficit >= need (at girth >= 6), or None.

    With at most one shared check per pair, deficit 5 needs five sharing pairs
    among the four, so j shares with at least two of the others and the
    fourth member shares with two of the remaining three.
    """
    sj = sorted(view.share(j))
    for a, b in combinations(sj, 2):
        sa, sb = view.share(a), view.share(b)
        cand = (view.share(j) & (sa | sb)) | (sa & sb)
        for x in sorted(cand - {j, a, b}):
            if view.deficit((j, a, b, x)) >= need:
                return tuple(sorted((j, a, b, x)))
    return None


# (8,0) ----------------------------------------------------------------------

def minimal_even_sets(graph: TannerGraph, max_weight: int, budget: int = DEFAULT_BUDGET,
                      root: int = -1) -> list[tuple[int, ...]]:
    sets, nodes, exceeded = backend.even_sets(graph, max_weight, root=root, budget=budget)
    if exceeded:
        raise BudgetExceeded("minimal_even_sets", nodes)
    return sets


def codewords_of_weight(graph: TannerGraph, weight: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All codeword supports of exactly ``weight``, as disjoint unions of minimal even sets."""
    mins = minimal_even_sets(graph, weight, budget)
    mins = [set(s) for s in mins]
    found: set[tuple[int, ...]] = set()

    def rec(start, acc: set):
        if len(acc) == weight:
            found.add(tuple(sorted(acc)))
            return
        for i in range(start, len(mins)):
            s = mins[i]
            if len(acc) + len(s) <= weight and not (acc & s):
                rec(i + 1, acc | s)

    rec(0, set())
    return sorted(found)


def find_weight8_codewords(graph: TannerGraph, budget: int = DEFAULT_BUDGET) -> list[SubgraphWitness]:
    _require_weight(graph, (3,))
    return [SubgraphWitness.of(graph, s, "TS(8,0)") for s in codewords_of_weight(graph, 8, budget)]


# four-variable subgraphs with few checks (cw4) -------------------------------

def classify_four_set(graph: TannerGraph, vs: Sequence[int]) -> str:
    deg = graph.induced_check_degrees(vs)
    n_checks = len(deg)
    if n_checks < 11:
        return f"ExpansionViolation(4,{n_checks + 1})"
    if n_checks > 11:
        return "none"
    shape = sorted(d for d in deg.values() if d >= 2)
    if shape == [2, 2, 2, 2, 2]:
        return "Fig13A"
    if shape == [2, 2, 2, 3]:
        return "Fig13B"
    return "Other"


def find_fig13_subgraphs(graph: TannerGraph, budget: int = DEFAULT_BUDGET,
                         include_denser: bool = True) -> list[SubgraphWitness]:
    """All 4-variable sets with at most 11 neighbouring checks, labelled by shape.

    Exactly 11 checks gives ``Fig13A`` (five degree-2 checks, i.e. complete
    graph minus an edge in the sharing relation) or ``Fig13B`` (one degree-3
    check on three of them plus three degree-2 checks to the fourth). Fewer
    than 11 is labelled as an expansion violation.
    """
    _require_weight(graph, (4,))
    if not _girth_at_least6(graph):
        raise GraphError("requires girth >= 6")
    need = 5
    thr, prune = _thresholds(4, 4, need, True)
    hits, nodes, exceeded = backend.connected_subsets(graph, 4, thr, prune, budget=budget, max_hits=1 << 40)
    if exceeded:
        raise BudgetExceeded("find_fig13_subgraphs", nodes)
    # at girth 6 a split 4-set has deficit at most 3, so only connected sets qualify
    out = []
    for s, d, m in sorted(set(hits)):
        if s != 4:
            continue
        kind = classify_four_set(graph, m)
        if kind.startswith("Fig13") or include_denser:
            out.append(SubgraphWitness.of(graph, m, kind))
    return sorted(out, key=SubgraphWitness.sort_key)


# reports --------------------------------------------------------------------

def default_conditions(graph: TannerGraph) -> tuple[str, ...]:
    return CW4_CONDITIONS if graph.column_weight == 4 else CW3_CONDITIONS


def evaluate_condition(graph: TannerGraph, name: str, budget: int = DEFAULT_BUDGET,
                       girth_value: Optional[int] = -1) -> tuple[ConditionResult, list[SubgraphWitness]]:
    """One named condition; returns the verdict and any witnesses to list in a report."""
    g = graph_girth(graph) if girth_value == -1 else girth_value
    if name.startswith("girth>="):
        target = int(name[len("girth>="):])
        ok = g is None or g >= target
        wit = None
        if not ok and g == 6:
            cyc = find_six_cycles(graph)
            wit = cyc[0] if cyc else None
        return ConditionResult(name, Verdict.PASS if ok else Verdict.FAIL, wit), []
    try:
        if name == "no-(5,3)":
            ws = find_53_structures(graph, budget)
            return ConditionResult(name, Verdict.FAIL if ws else Verdict.PASS, ws[0] if ws else None, len(ws)), ws
        if name == "no-(8,0)":
            ws = find_weight8_codewords(graph, budget)
            return ConditionResult(name, Verdict.FAIL if ws else Verdict.PASS, ws[0] if ws else None, len(ws)), ws
        if name == "no-(3,3)":
            ws = find_six_cycles(graph)
            return ConditionResult(name, Verdict.FAIL if ws else Verdict.PASS, ws[0] if ws else None, len(ws)), ws
        if name == "4->12" and graph.column_weight == 4 and (g is None or g >= 6):
            ws = find_fig13_subgraphs(graph, budget)
            return ConditionResult(name, Verdict.FAIL if ws else Verdict.PASS, ws[0] if ws else None, len(ws)), ws
    except BudgetExceeded as e:
        return ConditionResult(name, Verdict.BUDGET_EXCEEDED, nodes=e.nodes), []
    m = EXPANSION_RE.match(name)
    if m:
        return check_expansion(graph, int(m.group(1)), int(m.group(2)), budget), []
    raise ValueError(f"unknown condition {name!r}")


def analyze(graph: TannerGraph, conditions: Optional[Sequence[str]] = None,
            budget: int = DEFAULT_BUDGET) -> StructureReport:
    """Evaluate every requested condition from scratch and collect the witnesses."""
    g = graph_girth(graph)
    report = StructureReport(g)
    seen = set()
    for name in conditions or default_conditions(graph):
        res, ws = evaluate_condition(graph, name, budget, girth_value=g)
        report.conditions[name] = res
        for w in ws:
            if w not in seen:
                seen.add(w)
                report.witnesses.append(w)
    report.witnesses.sort(key=SubgraphWitness.sort_key)
    return report
