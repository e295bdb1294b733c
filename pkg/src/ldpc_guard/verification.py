"""Exhaustive and sampled decoding checks, trapping-set fixtures and counterexample search.

All engines use the all-zero codeword convention: an error pattern is the
support of the received word, and decoding succeeds when it returns the
all-zero word.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import backend
from .decoder import (
    CW4_GUARANTEE_ITER,
    DEFAULT_MAX_ITER,
    GALLAGER_A,
    CW4_HYBRID,
    ThresholdSchedule,
    decode,
    get_schedule,
)
from .graph import TannerGraph, girth
from .structures import (
    Verdict,
    check_expansion,
    classify_three_error_subgraph,
    find_53_structures,
    find_six_cycles,
    find_weight8_codewords,
    verify_theorem1_conditions,
)

DEFAULT_CHUNK = 250_000
STATUS_NAMES = {0: "Corrected", 1: "Miscorrected", 2: "FailedMaxIter"}


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("LDPC_GUARD_WORKERS", "1")))
    except ValueError:
        return 1


def _label(graph: TannerGraph, support: Sequence[int]) -> str:
    if len(support) == 3:
        return classify_three_error_subgraph(graph, support)
    return f"weight{len(support)}"


@dataclass(frozen=True)
class Failure:
    pattern: tuple[int, ...]
    status: int
    iterations: int
    label: str

    @property
    def verdict(self) -> str:
        return STATUS_NAMES[self.status]


@dataclass
class VerificationReport:
    max_weight: int
    patterns_tested: int
    failures: list[Failure]
    iteration_bound: int
    schedule: str
    n_vars: int
    nonconverged: int = 0
    miscorrected: int = 0
    exhaustive: bool = True
    per_weight: dict[int, int] = field(default_factory=dict)
    failures_truncated: bool = False

    @property
    def guarantee_holds(self) -> bool:
        return self.nonconverged == 0 and self.miscorrected == 0

    def expected_count(self) -> int:
        return sum(math.comb(self.n_vars, k) for k in range(1, self.max_weight + 1))

    def summary(self) -> dict[str, str]:
        return {
            "n": str(self.n_vars), "schedule": self.schedule, "max_weight": str(self.max_weight),
            "iterations": str(self.iteration_bound), "patterns_tested": str(self.patterns_tested),
            "exhaustive": str(self.exhaustive).lower(), "nonconverged": str(self.nonconverged),
            "miscorrected": str(self.miscorrected),
            "guarantee_holds": str(self.guarantee_holds).lower(),
            "failures_truncated": str(self.failures_truncated).lower(),
        }

    def to_csv(self) -> str:
        rows = ["pattern,verdict,configuration,iterations"]
        for f in self.failures:
            rows.append(f"{' '.join(map(str, f.pattern))},{f.verdict},{f.label},{f.iterations}")
        rows += [f"# {k}={v}" for k, v in self.summary().items()]
        return "\n".join(rows) + "\n"


# exhaustive -----------------------------------------------------------------

_WORKER: dict = {}


def _worker_init(graph: TannerGraph, schedule_name: str, max_iter: int) -> None:
    _WORKER["dec"] = backend.make_decoder(graph, get_schedule(schedule_name), max_iter)
    _WORKER["n"] = graph.n_vars


def _worker_range(args):
    w, start, count, cap = args
    return (w, start, count) + backend.decode_combination_range(_WORKER["dec"], _WORKER["n"], w, start, count, cap)


def _ranges(n: int, weights: Iterable[int], chunk: int):
    for w in weights:
        total = math.comb(n, w)
        for start in range(0, total, chunk):
            yield w, start, min(chunk, total - start)


def _read_checkpoint(path: Path) -> dict[tuple[int, int, int], tuple[int, int, list]]:
    done = {}
    if not path.exists():
        return done
    for ln in path.read_text().splitlines():
        if not ln.startswith("done "):
            continue
        kv = dict(t.split("=", 1) for t in ln.split()[1:])
        fails = []
        for item in filter(None, kv.get("fail", "").split(";")):
            pat, st = item.split("/")
            fails.append((tuple(int(x) for x in pat.split(",")), int(st)))
        done[(int(kv["weight"]), int(kv["start"]), int(kv["count"]))] = (
            int(kv["nonconverged"]), int(kv["miscorrected"]), fails)
    return done


def _append_checkpoint(path: Path, w, start, count, n2, n1, fails) -> None:
    f = ";".join(f"{','.join(map(str, p))}/{st}" for p, st in fails)
    with path.open("a") as fh:
        fh.write(f"done weight={w} start={start} count={count} nonconverged={n2} miscorrected={n1} fail={f}\n")


def exhaustive_verify(
    graph: TannerGraph,
    schedule: ThresholdSchedule = GALLAGER_A,
    t: int = 3,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: Optional[int] = None,
    chunk: int = DEFAULT_CHUNK,
    checkpoint: Optional[os.PathLike] = None,
    fail_cap: int = 10_000,
    weights: Optional[Sequence[int]] = None,
) -> VerificationReport:
    """Decode every error pattern of weight 1..t.

    The pattern space is split into lexicographic index ranges; completed
    ranges are appended to ``checkpoint`` (a plain manifest) and skipped on a
    rerun. Results do not depend on ``workers`` or ``chunk``.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    weights = list(weights) if weights is not None else list(range(1, t + 1))
    workers = default_workers() if workers is None else max(1, workers)
    ck = Path(checkpoint) if checkpoint else None
    done = _read_checkpoint(ck) if ck else {}
    todo = [(w, s, c) for (w, s, c) in _ranges(graph.n_vars, weights, chunk) if (w, s, c) not in done]
    results = [(w, s, c) + done[(w, s, c)] for (w, s, c) in done if w in weights]
    jobs = [(w, s, c, fail_cap) for (w, s, c) in todo]
    if workers == 1 or len(jobs) <= 1:
        _worker_init(graph, schedule.name, max_iter)
        it = map(_worker_range, jobs)
        for r in it:
            results.append(r)
            if ck:
                _append_checkpoint(ck, *r)
    else:
        with ProcessPoolExecutor(workers, initializer=_worker_init,
                                 initargs=(graph, schedule.name, max_iter)) as ex:
            for r in ex.map(_worker_range, jobs):
                results.append(r)
                if ck:
                    _append_checkpoint(ck, *r)
    return _merge(graph, schedule, max_iter, max(weights), results, fail_cap, exhaustive=True)


def _merge(graph, schedule, max_iter, t, results, fail_cap, exhaustive) -> VerificationReport:
    results.sort(key=lambda r: (r[0], r[1]))
    n2 = sum(r[3] for r in results)
    n1 = sum(r[4] for r in results)
    tested = sum(r[2] for r in results)
    per_weight: dict[int, int] = {}
    for r in results:
        per_weight[r[0]] = per_weight.get(r[0], 0) + r[2]
    raw = sorted({p for r in results for p in r[5]})
    truncated = sum(len(r[5]) for r in results) < n2 + n1
    raw = raw[:fail_cap]
    fails = []
    if raw:
        dec = backend.make_decoder(graph, schedule, max_iter)
        st, its = backend.decode_supports(dec, [p for p, _ in raw])
        for (p, s), s2, it in zip(raw, st, its):
            fails.append(Failure(p, int(s2), int(it), _label(graph, p)))
    return VerificationReport(t, tested, fails, max_iter, schedule.name, graph.n_vars, n2, n1,
                              exhaustive, per_weight, truncated)


# sampled --------------------------------------------------------------------

def random_supports(rng: np.random.Generator, n: int, w: int, count: int) -> np.ndarray:
    """``count`` uniformly random sorted w-subsets of range(n), as int32 rows."""
    out = np.empty((count, w), dtype=np.int32)
    filled = 0
    while filled < count:
        need = count - filled
        a = np.sort(rng.integers(0, n, size=(need + need // 8 + 16, w)), axis=1)
        ok = np.all(np.diff(a, axis=1) > 0, axis=1) if w > 1 else np.ones(len(a), bool)
        a = a[ok][:need]
        out[filled:filled + len(a)] = a
        filled += len(a)
    return out


def _sample_chunk(args):
    w, seed, index, count, cap = args
    rng = np.random.default_rng(np.random.SeedSequence([seed, w, index]))
    pats = random_supports(rng, _WORKER["n"], w, count)
    st, _ = backend.decode_fixed_weight(_WORKER["dec"], pats)
    bad = np.flatnonzero(st)
    fails = [(tuple(int(x) for x in pats[i]), int(st[i])) for i in bad[:cap]]
    return (w, index, count, int((st == 2).sum()), int((st == 1).sum()), fails)


def sampled_verify(
    graph: TannerGraph,
    schedule: ThresholdSchedule,
    weight: int,
    samples: int,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    workers: Optional[int] = None,
    chunk: int = 1_000_000,
    fail_cap: int = 10_000,
) -> VerificationReport:
    """Decode ``samples`` uniformly drawn patterns of one weight.

    Chunk i draws from ``SeedSequence([seed, weight, i])``, so the patterns
    do not depend on the worker count.
    """
    workers = default_workers() if workers is None else max(1, workers)
    jobs = []
    for i, start in enumerate(range(0, samples, chunk)):
        jobs.append((weight, seed, i, min(chunk, samples - start), fail_cap))
    if workers == 1 or len(jobs) <= 1:
        _worker_init(graph, schedule.name, max_iter)
        results = list(map(_sample_chunk, jobs))
    else:
        with ProcessPoolExecutor(workers, initializer=_worker_init,
                                 initargs=(graph, schedule.name, max_iter)) as ex:
            results = list(ex.map(_sample_chunk, jobs))
    rep = _merge(graph, schedule, max_iter, weight, results, fail_cap, exhaustive=False)
    rep.per_weight = {weight: samples}
    return rep


# fixtures -------------------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    graph: TannerGraph
    names: dict[str, int]
    check_names: dict[str, int]
    core_vars: tuple[int, ...]
    core_checks: tuple[int, ...]

    def vars(self, *names: str) -> tuple[int, ...]:
        return tuple(self.names[x] for x in names)

    def checks(self, *names: str) -> tuple[int, ...]:
        return tuple(self.check_names[x] for x in names)


def pad_core(core_var_adj: Sequence[Sequence[int]], n_core_checks: int, gamma: int) -> TannerGraph:
    """Give every core check one extra variable whose other gamma-1 checks are private.

    No outside variable then meets two core checks, and all variables have
    degree gamma.
    """
    var_adj = [list(r) for r in core_var_adj]
    m = n_core_checks
    for c in range(n_core_checks):
        row = [c] + list(range(m, m + gamma - 1))
        m += gamma - 1
        var_adj.append(row)
    return TannerGraph.from_var_adj(m, var_adj)


def build_53_fixture(padded: bool = True) -> Fixture:
    """The (5,3) trapping set that defeats three-error correction, padded to column weight three.

    Variables 0..4 are v11, v12, v13, v21, v22; checks 0..8 are c1..c9, with
    c2, c5, c8 the odd checks.
    """
    core = [
        [0, 1, 2],  # v11
        [3, 4, 5],  # v12
        [6, 7, 8],  # v13
        [0, 3, 6],  # v21
        [2, 5, 8],  # v22
    ]
    g = pad_core(core, 9, 3) if padded else TannerGraph.from_var_adj(9, core)
    names = {"v11": 0, "v12": 1, "v13": 2, "v21": 3, "v22": 4}
    return Fixture(g, names, {f"c{i + 1}": i for i in range(9)}, tuple(range(5)), tuple(range(9)))


def build_six_cycle_fixture(padded: bool = True) -> Fixture:
    """A (3,3) trapping set: a six-cycle whose variables each have one private odd check."""
    core = [[0, 2, 3], [0, 1, 4], [1, 2, 5]]
    g = pad_core(core, 6, 3) if padded else TannerGraph.from_var_adj(6, core)
    return Fixture(g, {"v1": 0, "v2": 1, "v3": 2}, {f"c{i + 1}": i for i in range(6)},
                   (0, 1, 2), tuple(range(6)))


def trapping_trace_messages(fx: Fixture, iteration: int) -> tuple[set, set]:
    """Edges (v, c) carrying a 1 forward and backward in the (5,3) trace, iterations 1-2."""
    g = fx.graph
    V1 = set(fx.vars("v11", "v12", "v13"))
    V2 = set(fx.vars("v21", "v22"))
    C1 = set(fx.core_checks)
    odd = set(fx.checks("c2", "c5", "c8"))
    edges = g.edges()
    if iteration % 2 == 1:
        fwd = {(v, c) for v, c in edges if v in V1}
        bwd = {(v, c) for v, c in edges if c in C1 and v not in V1}
    else:
        fwd = {(v, c) for v, c in edges if v in V2}
        bwd = {(v, c) for v, c in edges if c in C1 - odd and v not in V2}
    return fwd, bwd


def message_sets(graph: TannerGraph, state) -> tuple[set, set]:
    edges = graph.edges()
    fwd = {edges[e] for e in np.flatnonzero(state.forward)}
    bwd = {edges[e] for e in np.flatnonzero(state.backward)}
    return fwd, bwd


# critical number --------------------------------------------------------------

@dataclass
class CriticalNumberResult:
    target_set: tuple[int, ...]
    xi: Optional[int]
    witness: Optional[tuple[int, ...]]
    patterns_tested: int = 0
    inconclusive: int = 0
    weight_bound: int = 0


def not_eventually_correct(graph: TannerGraph, support: Sequence[int], schedule: ThresholdSchedule,
                           max_iter: int) -> Optional[frozenset]:
    """Variables still wrong at the end of decoding, or None when the tail is not periodic.

    Empty set means decoded correctly. A run that stops on a nonzero codeword
    returns that codeword's support. Otherwise the decision supports over the
    last ceil(D/2) iterations must repeat with period 1 or 2; their union is
    returned.
    """
    word = np.zeros(graph.n_vars, dtype=np.uint8)
    word[list(support)] = 1
    out = decode(graph, word, schedule, max_iter, record_trajectory=True)
    if out.converged:
        return frozenset(np.flatnonzero(out.final_estimate).tolist())
    tail = out.trajectory[-math.ceil(max_iter / 2):]
    periodic = all(tail[i] == tail[i - 2] for i in range(2, len(tail)))
    if not periodic:
        return None
    return frozenset().union(*map(set, tail))


def critical_number(graph: TannerGraph, target: Iterable[int], schedule: ThresholdSchedule = GALLAGER_A,
                    max_iter: int = DEFAULT_MAX_ITER, weight_bound: int = 3,
                    candidates: Optional[Sequence[int]] = None) -> CriticalNumberResult:
    """Smallest error weight whose not-eventually-correct set is exactly ``target``."""
    T = frozenset(target)
    cand = sorted(candidates) if candidates is not None else list(range(graph.n_vars))
    tested = inconclusive = 0
    for w in range(1, weight_bound + 1):
        for sup in combinations(cand, w):
            tested += 1
            res = not_eventually_correct(graph, sup, schedule, max_iter)
            if res is None:
                inconclusive += 1
            elif res == T:
                return CriticalNumberResult(tuple(sorted(T)), w, sup, tested, inconclusive, weight_bound)
    return CriticalNumberResult(tuple(sorted(T)), None, None, tested, inconclusive, weight_bound)


# column-weight-four necessity -------------------------------------------------

CW4_CONDITIONS = ("4->11", "5->12", "6->14", "7->16", "8->18")
# 5->12 is implied by 4->11 (see prove_4_11_implies_5_12), so it has no isolated counterexample
NECESSITY_CONDITIONS = ("4->11", "6->14", "7->16", "8->18")


@dataclass
class Counterexample:
    condition: str
    core: TannerGraph
    graph: TannerGraph
    pattern: tuple[int, ...]
    status: int
    witness: tuple[int, ...]
    attempts: int


class NotFound(RuntimeError):
    pass


def _core_conditions(core: TannerGraph) -> dict[str, Verdict]:
    out = {}
    for name in CW4_CONDITIONS:
        y, z = map(int, name.split("->"))
        if y > core.n_vars:
            out[name] = Verdict.PASS
        else:
            out[name] = check_expansion(core, y, z).verdict
    return out


def _random_linear_core(rng: np.random.Generator, k: int, m: int, gamma: int = 4,
                        tries: int = 200) -> Optional[list[list[int]]]:
    """k random gamma-subsets of m checks, pairwise sharing at most one, covering every check."""
    rows: list[list[int]] = []
    use = np.zeros(m, dtype=np.int64)
    for _ in range(k):
        for _t in range(tries):
            # favour checks that are already used so the core stays dense
            w = 1.0 + 3.0 * use
            unused = np.flatnonzero(use == 0)
            left = k - len(rows)
            if len(unused) > (left - 1) * gamma:
                w = np.where(use == 0, w * 20, w)
            p = w / w.sum()
            row = sorted(rng.choice(m, gamma, replace=False, p=p).tolist())
            if all(len(set(row) & set(r)) <= 1 for r in rows):
                rows.append(row)
                use[row] += 1
                break
        else:
            return None
    if (use == 0).any():
        return None
    return rows


def search_necessity_counterexample(condition: str, seed: int = 0, max_attempts: int = 200_000,
                                    schedule: ThresholdSchedule = CW4_HYBRID,
                                    max_iter: int = CW4_GUARANTEE_ITER) -> Counterexample:
    """Find a small padded girth-6 column-weight-4 graph failing only ``condition``
    on which some weight-3 pattern is not corrected within ``max_iter`` iterations.

    Cores of y variables on z-1 checks are drawn at random; padding gives every
    core check one outside variable with private checks, which keeps all
    other conditions as they are on the core and sends only 0 messages.
    """
    if condition not in CW4_CONDITIONS:
        raise ValueError(f"condition must be one of {CW4_CONDITIONS}")
    if condition not in NECESSITY_CONDITIONS:
        raise NotFound(f"{condition} cannot fail while 4->11 holds; no isolated counterexample exists")
    y, z = map(int, condition.split("->"))
    rng = np.random.default_rng(np.random.SeedSequence([seed, y, z]))
    for attempt in range(1, max_attempts + 1):
        rows = _random_linear_core(rng, y, z - 1)
        if rows is None:
            continue
        core = TannerGraph.from_var_adj(z - 1, rows)
        g = girth(core)
        if g is not None and g < 6:
            continue
        verdicts = _core_conditions(core)
        if verdicts[condition] is not Verdict.FAIL:
            continue
        if any(v is not Verdict.PASS for name, v in verdicts.items() if name != condition):
            continue
        dec = backend.make_decoder(core, schedule, max_iter)
        triples = list(combinations(range(y), 3))
        st, _ = backend.decode_supports(dec, triples)
        bad = np.flatnonzero(st)
        if len(bad):
            padded = pad_core(rows, z - 1, 4)
            pat = triples[int(bad[0])]
            st2, _ = backend.decode_supports(backend.make_decoder(padded, schedule, max_iter), [pat])
            assert st2[0] == st[bad[0]], "padding changed the decoding outcome"
            return Counterexample(condition, core, padded, pat, int(st[bad[0]]), tuple(range(y)), attempt)
    raise NotFound(f"no counterexample for {condition} within {max_attempts} attempts")


def _linear_families(k: int, max_degree: int):
    """Sets of 2+-element blocks on range(k), pairwise meeting in <= 1 point, degree <= max_degree."""
    blocks = [frozenset(b) for s in range(2, k + 1) for b in combinations(range(k), s)]
    out = []

    def rec(i, chosen, deg):
        out.append(list(chosen))
        for j in range(i, len(blocks)):
            b = blocks[j]
            if all(len(b & c) <= 1 for c in chosen) and all(deg[v] < max_degree for v in b):
                for v in b:
                    deg[v] += 1
                chosen.append(b)
                rec(j + 1, chosen, deg)
                chosen.pop()
                for v in b:
                    deg[v] -= 1

    rec(0, [], [0] * k)
    return out


@dataclass
class ImplicationProof:
    families_checked: int
    violating_5_sets: int
    counterexamples: list


def prove_4_11_implies_5_12(gamma: int = 4) -> ImplicationProof:
    """Enumerate every girth-6 sharing pattern of five degree-gamma variables.

    A 5->12 violation in any graph lives on five variables, and its
    4-subsets are 4-subsets of the graph, so checking all five-variable
    patterns settles the implication for graphs of every size. A pattern is a
    family of shared checks (blocks of >= 2 variables, two blocks meeting in at
    most one variable); the deficit of a set T is sum over blocks of
    (|block & T| - 1)^+.
    """
    def deficit(fam, T):
        return sum(max(0, len(b & T) - 1) for b in fam)

    fams = _linear_families(5, gamma)
    full = frozenset(range(5))
    need5 = gamma * 5 - 12 + 1
    need4 = gamma * 4 - 11 + 1
    violating = 0
    bad = []
    for fam in fams:
        if deficit(fam, full) >= need5:
            violating += 1
            if not any(deficit(fam, frozenset(T)) >= need4 for T in combinations(range(5), 4)):
                bad.append(fam)
    return ImplicationProof(len(fams), violating, bad)


def random_implication_check(n_graphs: int, seed: int = 0, max_vars: int = 8) -> list[TannerGraph]:
    """Random girth-6 cw4 graphs with <= max_vars variables passing 4->11 but failing 5->12."""
    rng = np.random.default_rng(seed)
    bad = []
    made = 0
    while made < n_graphs:
        k = int(rng.integers(5, max_vars + 1))
        m = int(rng.integers(8, 4 * k))
        rows = _random_linear_core(rng, k, m)
        if rows is None:
            continue
        core = TannerGraph.from_var_adj(m, rows)
        made += 1
        if check_expansion(core, 4, 11).verdict is Verdict.PASS and check_expansion(core, 5, 12).verdict is Verdict.FAIL:
            bad.append(core)
    return bad


# structural vs exhaustive ------------------------------------------------------

@dataclass
class EquivalenceRow:
    n: int
    m: int
    girth: Optional[int]
    n_six_cycles: int
    n_53: int
    n_53_trapping: int
    n_80: int
    structural_ok: bool
    exhaustive_ok: bool
    failures: int
    note: str = ""


@dataclass
class EquivalenceReport:
    rows: list[EquivalenceRow]
    discrepancies: list[str]

    @property
    def sufficiency_holds(self) -> bool:
        return not any(r.structural_ok and not r.exhaustive_ok for r in self.rows)


def structural_vs_exhaustive_equivalence(n_range: tuple[int, int] = (20, 60), trials: int = 10,
                                         seed: int = 0) -> EquivalenceReport:
    """Compare the structural verdict and exhaustive t=3 decoding on small cw3 codes.

    Half of the codes come from the constrained construction, half from plain
    PEG, so both clean and structure-bearing graphs appear.
    """
    from .construction import ConstructionError, ConstructionSpec, peg_construct, plain_peg

    rng = np.random.default_rng(seed)
    rows, notes = [], []
    made = 0
    while made < trials:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        m = int(rng.integers(max(n // 2, 9), n + 1))
        s = int(rng.integers(1 << 30))
        try:
            if made % 2 == 0:
                g = peg_construct(ConstructionSpec(n, m, 3, 7, rng_seed=s, max_retries=3)).graph
            else:
                g = plain_peg(n, m, 3, 7, seed=s)
        except (ConstructionError, ValueError):
            continue
        made += 1
        gi = girth(g)
        six = find_six_cycles(g)
        ts53 = find_53_structures(g)
        ts80 = find_weight8_codewords(g)
        structural = (gi is None or gi >= 8) and not ts53 and not ts80
        rep = exhaustive_verify(g, GALLAGER_A, 3, DEFAULT_MAX_ITER, workers=1)
        row = EquivalenceRow(n, m, gi, len(six), len(ts53), sum(1 for w in ts53 if w.external_share_ok),
                             len(ts80), structural, rep.guarantee_holds,
                             rep.nonconverged + rep.miscorrected)
        if structural and not rep.guarantee_holds:
            notes.append(f"n={n} m={m}: structurally clean but {row.failures} weight<=3 failures")
        if ts53 and not six and gi is not None and gi >= 8:
            for w in ts53:
                if not w.external_share_ok:
                    continue
                three = [v for v in w.variables
                         if sum(1 for c in g.var_adj[v] if c in w.odd_checks) == 1]
                hit = any(set(f.pattern) == set(three) for f in rep.failures)
                if not hit:
                    notes.append(f"n={n} m={m}: (5,3) at {w.variables} meets the outside condition "
                                 f"but its three odd-check variables decode correctly")
        for cyc in six:
            th = verify_theorem1_conditions(g, cyc.variables)
            hit = any(set(f.pattern) == set(cyc.variables) for f in rep.failures)
            row.note += f"six-cycle {cyc.variables} cond_b={th.condition_b} fails={hit};"
        rows.append(row)
    return EquivalenceReport(rows, notes)
