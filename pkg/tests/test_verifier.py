import pytest

from mutants import check_without_missing_edge_rule, eval_reversed_edges, map_dropping_nulls
from rel2pg.fixtures import ADMISSIONS_REPORT_SQL, DATE_FILTER_SQL
from rel2pg.generators import INJECTIONS, GeneratorConfig, case_database, inject, injection_for
from rel2pg.relational import check_relational_consistency
from rel2pg.verifier import (
    PropertyVerdict,
    check_query,
    verify,
    verify_information_preservation,
    verify_query_preservation,
    verify_semantic_preservation,
)

CFG = GeneratorConfig(seed=3, cases=40)


def test_deterministic_per_seed():
    a = [v.to_dict() for v in verify(CFG)]
    b = [v.to_dict() for v in verify(CFG)]
    assert a == b
    assert all(v["cases_run"] == 40 for v in a)


def test_all_properties_hold():
    for v in verify(CFG):
        assert v.ok, v.summary()


def test_injections_break_consistency():
    cfg = GeneratorConfig(seed=11)
    for case in range(1, 30, 2):
        kind = injection_for(cfg, case)
        assert kind in INJECTIONS
        assert not check_relational_consistency(case_database(cfg, case, kind)).consistent


def test_inject_none_when_impossible(db):
    import random

    from rel2pg.relational import RelationalDatabase

    empty = RelationalDatabase.build(db.schema, {})
    assert all(inject(random.Random(0), empty, k) is None for k in INJECTIONS)


def test_config_bounds():
    with pytest.raises(ValueError):
        GeneratorConfig(max_tuples=0)
    with pytest.raises(ValueError):
        GeneratorConfig(inconsistency_injection="fk-loop")


def test_hosp_queries(db):
    assert check_query(db, DATE_FILTER_SQL) == (True, "results match")
    assert check_query(db, ADMISSIONS_REPORT_SQL)[0]


def test_hosp_as_base(db):
    for v in verify(GeneratorConfig(seed=1, cases=20), db):
        assert v.ok, v.summary()


def test_mutant_ip_caught():
    v = verify_information_preservation(CFG, forward=map_dropping_nulls)
    assert not v.ok and v.counterexample is not None


def test_mutant_qp_caught(db):
    v = verify_query_preservation(GeneratorConfig(seed=3, cases=100), cypher_eval=eval_reversed_edges)
    assert not v.ok and v.counterexample.query is not None
    assert not check_query(db, DATE_FILTER_SQL, cypher_eval=eval_reversed_edges)[0]


def test_mutant_sp_caught():
    v = verify_semantic_preservation(
        GeneratorConfig(seed=3, cases=60, inconsistency_injection="fk-dangling"),
        graph_check=check_without_missing_edge_rule,
    )
    assert not v.ok


def test_verdict_invariants():
    with pytest.raises(ValueError):
        PropertyVerdict("IP", 2, 3)
    with pytest.raises(ValueError):
        PropertyVerdict("IP", 2, 1)
