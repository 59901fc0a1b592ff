"""Executable checks of information, semantic and query preservation."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .cypher import parse_cypher, render_cypher
from .engines import compare_results, eval_cypher, eval_sql
from .formats import dumps_rdb, rdb_to_dict
from .graph import check_graph_consistency
from .mapper import complete_map, complete_unmap, instance_map, schema_map
from .relational import RelationalDatabase, check_relational_consistency
from .s2c import translate
from .sql import parse_sql, validate_and_alias
from .generators import (
    INJECTIONS,
    GeneratorConfig,
    case_database,
    inject,
    injection_for,
    random_query,
)

PROPERTIES = ("ip", "sp", "qp")


@dataclass(frozen=True)
class Counterexample:
    db: RelationalDatabase
    query: str | None
    diff: str


@dataclass(frozen=True)
class PropertyVerdict:
    property: str  # "IP" | "QP" | "SP"
    cases_run: int
    cases_passed: int
    counterexample: Counterexample | None = None

    def __post_init__(self) -> None:
        if self.cases_passed > self.cases_run:
            raise ValueError("more cases passed than were run")
        if (self.counterexample is None) != (self.cases_passed == self.cases_run):
            raise ValueError("a counterexample is present exactly when some case failed")

    @property
    def ok(self) -> bool:
        return self.cases_passed == self.cases_run

    def to_dict(self) -> dict:
        out = {"property": self.property, "cases_run": self.cases_run,
               "cases_passed": self.cases_passed, "counterexample": None}
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {"db": rdb_to_dict(ce.db), "query": ce.query, "diff": ce.diff}
        return out

    def summary(self) -> str:
        line = f"{self.property}: {self.cases_passed}/{self.cases_run} passed"
        if self.counterexample is not None:
            line += f" -- first counterexample: {self.counterexample.diff}"
        return line


class _Tally:
    def __init__(self, prop: str) -> None:
        self.prop, self.run, self.passed, self.first = prop, 0, 0, None

    def record(self, ok: bool, db: RelationalDatabase, query: str | None, diff: str) -> None:
        self.run += 1
        if ok:
            self.passed += 1
        elif self.first is None:
            self.first = Counterexample(db, query, diff)

    def verdict(self) -> PropertyVerdict:
        return PropertyVerdict(self.prop, self.run, self.passed, self.first)


def _databases(cfg: GeneratorConfig, base: RelationalDatabase | None):
    """Yield ``cfg.cases`` databases; half carry an injected inconsistency.

    With *base*, case 0 is *base* itself and later cases are injected variants of it.
    """
    for case in range(cfg.cases):
        kind = injection_for(cfg, case)
        if base is None:
            yield case_database(cfg, case, kind)
            continue
        if kind is None or case == 0:
            yield base
            continue
        rng = cfg.rng(case)
        kinds = [kind] + [k for k in INJECTIONS if k != kind]
        yield next((bad for k in kinds if (bad := inject(rng, base, k)) is not None), base)


def verify_information_preservation(
    cfg: GeneratorConfig,
    db: RelationalDatabase | None = None,
    *,
    forward: Callable = complete_map,
    inverse: Callable = complete_unmap,
) -> PropertyVerdict:
    """Round-trip every case through the mapping and its inverse; demand exact equality."""
    tally = _Tally("IP")
    for d in _databases(cfg, db):
        try:
            gd, _ = forward(d)
            back = inverse(gd)
            want, got = dumps_rdb(d), dumps_rdb(back)
            ok = back == d and got == want
            diff = "" if ok else "round trip changed the database"
        except Exception as exc:  # a failing inverse is a counterexample, not a crash
            ok, diff = False, f"{type(exc).__name__}: {exc}"
        tally.record(ok, d, None, diff)
    return tally.verdict()


def verify_semantic_preservation(
    cfg: GeneratorConfig,
    db: RelationalDatabase | None = None,
    *,
    graph_check: Callable = check_graph_consistency,
) -> PropertyVerdict:
    tally = _Tally("SP")
    for d in _databases(cfg, db):
        rel = check_relational_consistency(d)
        graph = graph_check(instance_map(d), schema_map(d.schema))
        ok = rel.consistent == graph.consistent
        diff = "" if ok else (
            f"relational consistent={rel.consistent} ({len(rel.violations)} violations) but "
            f"graph consistent={graph.consistent} ({len(graph.violations)} violations)"
        )
        tally.record(ok, d, None, diff)
    return tally.verdict()


def check_query(
    d: RelationalDatabase,
    sql: str,
    *,
    cypher_eval: Callable = eval_cypher,
    ig=None,
) -> tuple[bool, str]:
    """Evaluate *sql* directly and through the Cypher translation on the mapped graph; compare row sets."""
    q = validate_and_alias(parse_sql(sql), d.schema)
    cypher = parse_cypher(render_cypher(translate(q, d.schema)))
    ig = ig if ig is not None else instance_map(d)
    report = compare_results(eval_sql(q, d.instance), cypher_eval(cypher, ig))
    return report.verdict, report.describe()


def verify_query_preservation(
    cfg: GeneratorConfig,
    db: RelationalDatabase | None = None,
    *,
    cypher_eval: Callable = eval_cypher,
) -> PropertyVerdict:
    tally = _Tally("QP")
    for case, d in enumerate(_databases(cfg, db)):
        sql = random_query(cfg.rng(case, 7919), d, cfg)
        try:
            ok, diff = check_query(d, sql, cypher_eval=cypher_eval)
        except Exception as exc:
            ok, diff = False, f"{type(exc).__name__}: {exc}"
        tally.record(ok, d, sql, diff)
    return tally.verdict()


def verify(cfg: GeneratorConfig, db: RelationalDatabase | None = None,
           properties=PROPERTIES) -> list[PropertyVerdict]:
    runners = {
        "ip": verify_information_preservation,
        "sp": verify_semantic_preservation,
        "qp": verify_query_preservation,
    }
    return [runners[p](cfg, db) for p in properties]
