"""Translation of validated SQL queries into Cypher over the mapped graph."""

from __future__ import annotations

from dataclasses import dataclass

from .cypher import render_cypher
from .mapper import edge_labels
from .relational import ForeignKey, RelationalSchema
from .sql import parse_sql, validate_and_alias
from .syntax import STAR, Condition, CypherQuery, NodePat, PathPat, Ref, RelPat, SqlQuery


@dataclass(frozen=True)
class FkJoin:
    fk: ForeignKey
    source_alias: str
    target_alias: str
    label: str


def _require_validated(q: SqlQuery) -> None:
    if any(e.alias is None for e in q.from_) or any(
        r.var is None or r.name == STAR for r in q.items
    ) or any(r.var is None for c in q.where for r in c.refs()):
        raise ValueError("query must go through validate_and_alias first")


def detect_fk_joins(q: SqlQuery, schema: RelationalSchema) -> list[FkJoin]:
    """Foreign-key joins fully spelled out by equality conditions in WHERE.

    A join between aliases x (referencing) and y (referenced) is detected when every
    column pair of the foreign key appears as ``x.a = y.b`` (either side order).
    """
    _require_validated(q)
    eqs = set()
    for c in q.where:
        if c.op == "=" and isinstance(c.right, Ref):
            eqs.add((c.left, c.right))
            eqs.add((c.right, c.left))
    labels = edge_labels(schema)
    found = []
    for fk in schema.foreign_keys:
        for x in q.from_:
            if x.relation != fk.source_relation:
                continue
            for y in q.from_:
                if y.relation != fk.target_relation or y.alias == x.alias:
                    continue
                if all(
                    (Ref(x.alias, a), Ref(y.alias, b)) in eqs
                    for a, b in zip(fk.source_attrs, fk.target_attrs)
                ):
                    found.append(FkJoin(fk, x.alias, y.alias, labels[fk]))
    return found


def _edge_joins(joins: list[FkJoin]) -> list[FkJoin]:
    # Relationship uniqueness would forbid two pattern edges with one label from
    # binding the same graph edge, which SQL allows (e.g. two aliases of one
    # relation joined to the same row). Keep one edge per label; the join
    # equalities stay in WHERE, so the remaining joins still filter correctly.
    kept, labels = [], set()
    for j in joins:
        if j.label not in labels:
            labels.add(j.label)
            kept.append(j)
    return kept


def _paths(aliases: list[str], relation_of: dict[str, str], joins: list[FkJoin]) -> list[PathPat]:
    used = [False] * len(joins)

    def unused_at(a: str) -> list[int]:
        return [i for i, j in enumerate(joins) if not used[i] and a in (j.source_alias, j.target_alias)]

    def start() -> str:
        live = [a for a in aliases if unused_at(a)]
        odd = [a for a in live if len(unused_at(a)) % 2 == 1]
        pool = odd or live
        for a in pool:
            if joins[unused_at(a)[0]].source_alias == a:
                return a
        return pool[0]

    paths, placed = [], set()
    while not all(used):
        cur = start()
        elements: list = [NodePat(cur, relation_of[cur])]
        placed.add(cur)
        while True:
            nxt = unused_at(cur)
            if not nxt:
                break
            i = nxt[0]
            used[i] = True
            j = joins[i]
            if j.source_alias == cur:
                rel, cur = RelPat(j.label, "out"), j.target_alias
            else:
                rel, cur = RelPat(j.label, "in"), j.source_alias
            elements += [rel, NodePat(cur, relation_of[cur])]
            placed.add(cur)
        paths.append(PathPat(tuple(elements)))
    for a in aliases:
        if a not in placed:
            paths.append(PathPat((NodePat(a, relation_of[a]),)))
    return paths


def translate(q: SqlQuery, schema: RelationalSchema) -> CypherQuery:
    """FROM entries become labelled nodes, FK joins become directed edges
    (referencing → referenced), conditions carry over unchanged, and RETURN keeps
    the SELECT order.
    """
    _require_validated(q)
    aliases = [e.alias for e in q.from_]
    relation_of = {e.alias: e.relation for e in q.from_}
    joins = _edge_joins(detect_fk_joins(q, schema))
    match = _paths(aliases, relation_of, joins)
    where = tuple(Condition(c.left, c.op, c.right) for c in q.where)
    return CypherQuery(tuple(match), where, tuple(q.items), q.distinct)


def sql_to_cypher(text: str, schema: RelationalSchema) -> str:
    """Parse, validate, translate and render in one call."""
    return render_cypher(translate(validate_and_alias(parse_sql(text), schema), schema))
