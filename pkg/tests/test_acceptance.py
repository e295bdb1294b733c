"""End-to-end acceptance runs; each test records one pass/fail line before asserting."""
import math
import time

import numpy as np
import oracles
from ldpc_guard import alist
from ldpc_guard.channel import BscRun, estimate_slope, exact_fer, simulate_fer
from ldpc_guard.cli import EXIT_OK, main
from ldpc_guard.construction import ConstructionSpec, peg_construct, plain_peg
from ldpc_guard.decoder import CW4_HYBRID, GALLAGER_A, ErrorPattern, decode
from ldpc_guard.graph import degree_profile, girth
from ldpc_guard.structures import (
    StructureReport, Verdict, check_expansion, codewords_of_weight, find_53_structures, find_fig13_subgraphs,
)
from ldpc_guard.verification import (
    NECESSITY_CONDITIONS, build_53_fixture, critical_number, exhaustive_verify, trapping_trace_messages,
    message_sets, prove_4_11_implies_5_12, random_implication_check, sampled_verify,
    search_necessity_counterexample,
)

from conftest import random_graph, random_girth6


def test_criterion_1_trapping_trace(criterion):
    t0 = time.perf_counter()
    fx = build_53_fixture()
    out = decode(fx.graph, ErrorPattern.of(fx.vars("v11", "v12", "v13")), GALLAGER_A, 25,
                 record_messages=True, record_trajectory=True)
    trace_ok = all(message_sets(fx.graph, out.messages[j - 1]) == trapping_trace_messages(fx, j) for j in (1, 2))
    period_ok = out.oscillation == 2 and not out.converged and all(
        out.trajectory[j] == out.trajectory[j - 2] for j in range(2, 25))
    res = critical_number(fx.graph, fx.core_vars, GALLAGER_A, 25, 3)
    two = critical_number(fx.graph, fx.core_vars, GALLAGER_A, 25, 2)
    elapsed = time.perf_counter() - t0
    ok = trace_ok and period_ok and res.xi == 3 and two.xi is None and elapsed < 1.0
    criterion(1, ok, f"trace={trace_ok} period2={period_ok} xi={res.xi} weight2_xi={two.xi} time={elapsed:.3f}s")
    assert ok


def test_criterion_2_cw3_desk_guarantee(criterion, cw3_desk):
    g = cw3_desk.graph
    t0 = time.perf_counter()
    rep = exhaustive_verify(g, GALLAGER_A, 3, 25)
    elapsed = time.perf_counter() - t0
    n = g.n_vars
    ok = (100 <= n <= 160 and g.column_weight == 3 and girth(g) >= 8 and cw3_desk.report.all_pass
          and rep.guarantee_holds and rep.patterns_tested == n + math.comb(n, 2) + math.comb(n, 3))
    criterion(2, ok, f"n={n} m={g.n_checks} girth={girth(g)} patterns={rep.patterns_tested} "
                     f"failures={len(rep.failures)} time={elapsed:.1f}s")
    assert ok


def test_criterion_3_cw3_full_size(criterion):
    t0 = time.perf_counter()
    res = peg_construct(ConstructionSpec(504, 252, 3, 7, rng_seed=0))
    low = exhaustive_verify(res.graph, GALLAGER_A, 2, 25)
    samp = sampled_verify(res.graph, GALLAGER_A, 3, 10_000_000, 25, seed=0)
    elapsed = time.perf_counter() - t0
    ok = (res.report.all_pass and low.guarantee_holds and samp.guarantee_holds
          and samp.patterns_tested >= 10_000_000 and degree_profile(res.graph).max_check_degree <= 7)
    criterion(3, ok, f"report_clean={res.report.all_pass} weight<=2_failures={len(low.failures)} "
                     f"sampled_weight3={samp.patterns_tested} failures={len(samp.failures)} time={elapsed:.1f}s")
    assert ok


def test_criterion_4_cw4_guarantee(criterion, cw4_desk):
    g = cw4_desk.graph
    t0 = time.perf_counter()
    rep = exhaustive_verify(g, CW4_HYBRID, 3, 4)
    elapsed = time.perf_counter() - t0
    passes = check_expansion(g, 4, 12).verdict is Verdict.PASS
    ok = 150 <= g.n_vars <= 250 and girth(g) >= 6 and passes and rep.guarantee_holds
    criterion(4, ok, f"n={g.n_vars} 4->12={passes} patterns={rep.patterns_tested} "
                     f"failures={len(rep.failures)} time={elapsed:.1f}s")
    assert ok


def _girth6(rng, n, m, gamma):
    for _ in range(50):
        try:
            return random_girth6(rng, n, m, gamma)
        except RuntimeError:
            continue
    raise RuntimeError("generator stuck")


def _detector_mismatches(rng):
    bad = []
    for i in range(40):
        n = int(rng.integers(14, 25))
        g = _girth6(rng, n, int(rng.integers(max(13, int(0.8 * n)), n + 3)), 3)
        if {w.variables for w in find_53_structures(g)} != oracles.ts53_sets(g):
            bad.append(f"cw3#{i}:(5,3)")
        if set(codewords_of_weight(g, 8)) != oracles.weight_k_codewords(g, 8):
            bad.append(f"cw3#{i}:(8,0)")
        for y, z in ((3, 8), (4, 10), (5, 11), (6, 13)):
            if (check_expansion(g, y, z).verdict is Verdict.FAIL) != oracles.expansion_fails(g, y, z):
                bad.append(f"cw3#{i}:{y}->{z}")
    for i in range(40):
        n = int(rng.integers(10, 25))
        g = _girth6(rng, n, int(rng.integers(max(16, n + 6), 31)), 4)
        want = oracles.four_sets_with_few_checks(g)
        got = {w.variables: w.n_checks for w in find_fig13_subgraphs(g)}
        if got != want:
            bad.append(f"cw4#{i}:Fig13")
        for y, z in ((4, 11), (4, 12), (5, 12), (6, 14)):
            if (check_expansion(g, y, z).verdict is Verdict.FAIL) != oracles.expansion_fails(g, y, z):
                bad.append(f"cw4#{i}:{y}->{z}")
    for i in range(20):
        # four-cycles allowed
        g = random_graph(rng, int(rng.integers(12, 21)), int(rng.integers(10, 17)), 3)
        if set(codewords_of_weight(g, 8)) != oracles.weight_k_codewords(g, 8):
            bad.append(f"any#{i}:(8,0)")
        for y, z in ((3, 7), (4, 9), (5, 11)):
            if (check_expansion(g, y, z).verdict is Verdict.FAIL) != oracles.expansion_fails(g, y, z):
                bad.append(f"any#{i}:{y}->{z}")
    return bad


def test_criterion_5_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240501)
    mismatches = _detector_mismatches(rng)
    inside = 0
    for i in range(20):
        n = int(rng.integers(10, 17))
        g = random_graph(rng, n, int(rng.integers(n // 2 + 2, n)), 3)
        want = exact_fer(g, GALLAGER_A, 0.1)
        pt = simulate_fer(g, GALLAGER_A, BscRun(0.1, seed=i, max_trials=20_000, target_frame_errors=10 ** 9),
                          workers=1)
        lo, hi = pt.interval
        inside += lo <= want <= hi
    elapsed = time.perf_counter() - t0
    ok = not mismatches and inside >= 18 and elapsed < 300
    criterion(5, ok, f"graphs=100 mismatches={len(mismatches)} fer_inside={inside}/20 time={elapsed:.1f}s")
    assert ok, mismatches[:10]


def test_criterion_6_fer_slope(criterion, cw3_desk):
    t0 = time.perf_counter()
    pts = [simulate_fer(cw3_desk.graph, GALLAGER_A, BscRun(a, seed=0, max_trials=50_000_000,
                                                           target_frame_errors=100))
           for a in (0.05, 0.03, 0.02)]
    fit = estimate_slope(pts, min_errors=100)
    elapsed = time.perf_counter() - t0
    ok = not fit.insufficient and 3.3 <= fit.slope <= 4.7
    fers = " ".join(f"{p.alpha:g}:{p.fer:.3e}({p.frame_errors}/{p.trials},wmin={p.min_fail_weight})" for p in pts)
    criterion(6, ok, f"slope={fit.slope:.2f} points={fit.points_used} {fers} time={elapsed:.1f}s")
    assert ok


def test_criterion_7_necessity(criterion):
    t0 = time.perf_counter()
    found = {}
    for cond in NECESSITY_CONDITIONS:
        ce = search_necessity_counterexample(cond, seed=0)
        y, z = map(int, cond.split("->"))
        others = all(check_expansion(ce.core, *map(int, o.split("->"))).verdict is Verdict.PASS
                     for o in ("4->11", "5->12", "6->14", "7->16", "8->18")
                     if o != cond and int(o.split("->")[0]) <= ce.core.n_vars)
        valid = (girth(ce.graph) >= 6 and ce.graph.column_weight == 4 and len(ce.pattern) == 3
                 and check_expansion(ce.core, y, z).verdict is Verdict.FAIL and others and ce.status != 0)
        found[cond] = (valid, ce.core.n_vars, ce.core.n_checks, ce.attempts)
    proof = prove_4_11_implies_5_12()
    rand = random_implication_check(2000, seed=0, max_vars=8)
    elapsed = time.perf_counter() - t0
    ok = all(v[0] for v in found.values()) and not proof.counterexamples and not rand and elapsed < 1800
    parts = " ".join(f"{c}:{v[1]}v/{v[2]}c" for c, v in found.items())
    criterion(7, ok, f"{parts} implication_families={proof.families_checked} "
                     f"counterexamples={len(proof.counterexamples)}+{len(rand)} time={elapsed:.1f}s")
    assert ok


def test_criterion_8_baseline_report(criterion, tmp_path, capsys):
    path = tmp_path / "peg504.alist"
    alist.save_alist(plain_peg(504, 252, 3, 7, seed=0), path)
    outputs = []
    codes = []
    for _ in range(2):
        codes.append(main(["check", f"in={path}", "conditions=girth>=8,no-(5,3),no-(8,0)"]))
        outputs.append(capsys.readouterr().out)
    kv = StructureReport.parse_keyvalue(outputs[0])
    count = int(kv["condition.no-(5,3).count"])
    ok = codes == [EXIT_OK, EXIT_OK] and outputs[0] == outputs[1] and "girth" in kv
    criterion(8, ok, f"girth={kv.get('girth')} ts53={count} deterministic={outputs[0] == outputs[1]} "
                     f"instance=plain_peg(504,252,seed=0)")
    assert ok
