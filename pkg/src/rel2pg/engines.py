"""Desk-scale evaluators for SQL over relations and Cypher over instance graphs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .graph import InstanceGraph, IVertex
from .relational import RelationalInstance
from .syntax import STAR, Condition, CypherQuery, NodePat, Ref, SqlQuery
from .values import NULL, Value, compare, normalize


@dataclass(frozen=True)
class ResultTable:
    """A positional result table; rows form a multiset."""

    column_names: tuple[str, ...]
    rows: tuple[tuple[Value, ...], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "column_names", tuple(self.column_names))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        n = len(self.column_names)
        for r in self.rows:
            if len(r) != n:
                raise ValueError(f"row {r!r} does not have {n} columns")

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class MatchReport:
    verdict: bool
    only_left: tuple[tuple[Value, ...], ...] = ()
    only_right: tuple[tuple[Value, ...], ...] = ()

    def describe(self) -> str:
        if self.verdict:
            return "results match"
        parts = []
        if self.only_left:
            parts.append(f"only in first: {[list(map(str, r)) for r in self.only_left]}")
        if self.only_right:
            parts.append(f"only in second: {[list(map(str, r)) for r in self.only_right]}")
        return "; ".join(parts)


def _holds(c: Condition, lookup) -> bool:
    right = lookup(c.right) if isinstance(c.right, Ref) else c.right
    return compare(c.op, lookup(c.left), right)


def _schedule(order: list[str], conditions) -> list[list[Condition]]:
    """Bucket each condition under the position at which its last variable binds."""
    pos = {v: i for i, v in enumerate(order)}
    buckets: list[list[Condition]] = [[] for _ in order]
    for c in conditions:
        buckets[max(pos[r.var] for r in c.refs())].append(c)
    return buckets


def eval_sql(q: SqlQuery, inst: RelationalInstance) -> ResultTable:
    """Cartesian product of FROM, filtered by the WHERE conjunction, projected.

    Conditions are checked as soon as their aliases are bound; this only prunes
    and never changes the result.
    """
    if any(e.alias is None for e in q.from_) or any(r.var is None or r.name == STAR for r in q.items):
        raise ValueError("query must go through validate_and_alias first")
    aliases = [e.alias for e in q.from_]
    tables = [inst[e.relation] for e in q.from_]
    checks = _schedule(aliases, q.where)
    env: dict = {}

    def lookup(ref: Ref) -> Value:
        return env[ref.var][ref.name]

    rows = []

    def walk(i: int) -> None:
        if i == len(aliases):
            rows.append(tuple(lookup(r) for r in q.items))
            return
        for t in tables[i]:
            env[aliases[i]] = t
            if all(_holds(c, lookup) for c in checks[i]):
                walk(i + 1)
        env.pop(aliases[i], None)

    walk(0)
    table = ResultTable(tuple(str(r) for r in q.items), rows)
    return dedup(table) if q.distinct else table


def _steps(c: CypherQuery):
    """Flatten the MATCH clause into node and relationship binding steps."""
    steps = []
    for path in c.match:
        steps.append(("node", path.elements[0]))
        for src, rel, dst in path.hops():
            steps.append(("rel", src, rel, dst))
    return steps


def eval_cypher(c: CypherQuery, ig: InstanceGraph) -> ResultTable:
    """Match the patterns under edge-isomorphism: node variables may repeat, but
    no graph edge binds two relationship positions of one match.
    """
    labels = c.labels()
    by_label: dict[str | None, list[IVertex]] = defaultdict(list)
    for v in ig.vertices:
        by_label[v.label].append(v)
    index = ig.vertex_index()
    out_edges: dict[int, list[int]] = defaultdict(list)
    in_edges: dict[int, list[int]] = defaultdict(list)
    for k, e in enumerate(ig.edges):
        out_edges[e.source_id].append(k)
        in_edges[e.target_id].append(k)

    steps = _steps(c)
    order = list(dict.fromkeys((st[1] if st[0] == "node" else st[3]).var for st in steps))
    checks = dict(zip(order, _schedule(order, c.where)))

    env: dict[str, IVertex] = {}
    used: set[int] = set()
    rows = []

    def lookup(ref: Ref) -> Value:
        return env[ref.var].props.get(ref.name, NULL)

    def bind(node: NodePat, v: IVertex, k: int) -> None:
        want = labels.get(node.var)
        if node.var in env:
            if env[node.var].id == v.id:
                walk(k + 1)
            return
        if want is not None and v.label != want:
            return
        env[node.var] = v
        if all(_holds(cond, lookup) for cond in checks[node.var]):
            walk(k + 1)
        del env[node.var]

    def walk(k: int) -> None:
        if k == len(steps):
            rows.append(tuple(lookup(r) for r in c.return_items))
            return
        st = steps[k]
        if st[0] == "node":
            node = st[1]
            if node.var in env:
                walk(k + 1)
                return
            want = labels.get(node.var)
            for v in (by_label.get(want, ()) if want is not None else ig.vertices):
                bind(node, v, k)
            return
        _, src, rel, dst = st
        here = env[src.var].id
        candidates = out_edges[here] if rel.direction == "out" else in_edges[here]
        for ek in candidates:
            e = ig.edges[ek]
            if ek in used or e.label != rel.label:
                continue
            other = index[e.target_id] if rel.direction == "out" else index[e.source_id]
            used.add(ek)
            bind(dst, other, k)
            used.discard(ek)

    walk(0)
    table = ResultTable(tuple(str(r) for r in c.return_items), rows)
    return dedup(table) if c.distinct else table


def dedup(t: ResultTable) -> ResultTable:
    """Drop repeated rows, keeping first occurrences; NULL equals NULL here."""
    return ResultTable(t.column_names, tuple(dict.fromkeys(t.rows)))


def compare_results(a: ResultTable, b: ResultTable) -> MatchReport:
    """Compare the duplicate-free row sets, after normalizing value forms."""
    if len(a.column_names) != len(b.column_names):
        raise ValueError(f"column counts differ: {len(a.column_names)} vs {len(b.column_names)}")

    def keyed(t: ResultTable) -> dict[tuple, tuple[Value, ...]]:
        out: dict[tuple, tuple[Value, ...]] = {}
        for r in dedup(t).rows:
            out.setdefault(tuple(normalize(v) for v in r), r)
        return out

    ka, kb = keyed(a), keyed(b)
    only_a = tuple(r for k, r in ka.items() if k not in kb)
    only_b = tuple(r for k, r in kb.items() if k not in ka)
    return MatchReport(not only_a and not only_b, only_a, only_b)
