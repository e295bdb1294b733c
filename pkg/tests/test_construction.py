import pytest

from ldpc_guard import alist
from ldpc_guard.construction import (
    CandidateExhausted, ConstructionSpec, GraphBuilder, incremental_forbidden_check, peg_construct, plain_peg,
)
from ldpc_guard.graph import degree_profile, girth
from ldpc_guard.structures import analyze, find_53_structures


def test_spec_defaults_and_targets():
    s3 = ConstructionSpec(100, 60)
    assert s3.depth == 6 and s3.girth_target == 8
    assert s3.conditions() == ("girth>=8", "no-(5,3)", "no-(8,0)")
    s4 = ConstructionSpec(100, 80, 4, 9)
    assert s4.depth == 4 and s4.girth_target == 6
    assert s4.conditions() == ("girth>=6", "4->12")


@pytest.mark.parametrize("kwargs", [
    dict(n_vars=100, n_checks=30),  # 300 edges cannot fit 30 checks of degree <= 7
    dict(n_vars=10, n_checks=10, column_weight=1),
    dict(n_vars=10, n_checks=10, avoid=frozenset({"TS(9,9)"})),
    dict(n_vars=10, n_checks=10, tree_depth=0),
])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        ConstructionSpec(**kwargs)


def test_spec_keyvalue_round_trip():
    s = ConstructionSpec(120, 80, 3, 7, rng_seed=5, max_retries=2)
    assert ConstructionSpec.from_keyvalue(s.to_keyvalue()) == ConstructionSpec(
        120, 80, 3, 7, 6, frozenset({"TS(5,3)", "TS(8,0)"}), 5, 2)
    with pytest.raises(ValueError):
        ConstructionSpec.from_keyvalue("n=3\nbogus=1\nm=4")
    with pytest.raises(ValueError):
        ConstructionSpec.from_keyvalue("n=3")


def test_cw3_construction_is_clean(cw3_desk):
    g = cw3_desk.graph
    assert girth(g) >= 8
    assert cw3_desk.report.all_pass
    p = degree_profile(g)
    assert p.column_weight == 3 and p.max_check_degree <= 7


def test_cw4_construction_passes_4_12(cw4_desk):
    g = cw4_desk.graph
    assert girth(g) >= 6
    assert cw4_desk.report.conditions["4->12"].passed


def test_same_spec_same_graph(cw3_desk):
    again = peg_construct(cw3_desk.spec)
    assert again.graph == cw3_desk.graph and again.seed_used == cw3_desk.seed_used


def test_different_seed_different_graph(cw3_desk):
    spec = ConstructionSpec(150, 95, 3, 7, rng_seed=1)
    assert peg_construct(spec).graph != cw3_desk.graph


def test_post_check_agrees_with_fresh_analysis(cw3_desk, tmp_path):
    path = tmp_path / "g.alist"
    alist.save_alist(cw3_desk.graph, path)
    fresh = analyze(alist.load_alist(path), cw3_desk.spec.conditions())
    assert fresh.to_keyvalue() == cw3_desk.report.to_keyvalue()


def test_infeasible_rate_raises():
    with pytest.raises(CandidateExhausted):
        peg_construct(ConstructionSpec(100, 50, 3, 7, rng_seed=0))


def test_incremental_check_rejects_closing_edge():
    # (5,3) core with one edge of v22 missing: adding it back must be refused
    core = [[0, 1, 2], [3, 4, 5], [6, 7, 8], [0, 3, 6], [2, 5]]
    b = GraphBuilder(5, 12)
    for v, row in enumerate(core):
        for c in row:
            b.add_edge(v, c)
    adm = incremental_forbidden_check(b, 4, 8, frozenset({"TS(5,3)"}), gamma=3)
    assert not adm.admissible and adm.reason == "TS(5,3)"
    assert incremental_forbidden_check(b, 4, 9, frozenset({"TS(5,3)"}), gamma=3).admissible
    assert incremental_forbidden_check(b, 4, 2, frozenset(), gamma=3).reason == "parallel"
    # lookahead: v13 joined to v21 (c7) and v22 (c9) can only finish as a (5,3)
    b.add_edge(4, 8)
    b.remove_edge(2, 7)
    b.remove_edge(2, 8)
    assert not incremental_forbidden_check(b, 2, 8, frozenset({"TS(5,3)"}), gamma=3).admissible
    assert incremental_forbidden_check(b, 2, 8, frozenset({"TS(5,3)"}), gamma=0).admissible


def test_plain_peg_baseline_has_53_structures():
    g = plain_peg(504, 252, 3, 7, seed=0)
    assert girth(g) >= 6
    assert plain_peg(504, 252, 3, 7, seed=0) == g
    assert len(find_53_structures(g)) > 0
