"""Seeded random databases, inconsistency injection, and random SPJ queries."""

from __future__ import annotations

import datetime as dt
import random
from dataclasses import dataclass

from .relational import ForeignKey, Record, Relation, RelationalDatabase, RelationalSchema
from .values import NULL, AttrType, Value

INJECTIONS = ("pk-null", "pk-dup", "fk-dangling")
_PLAIN_TYPES = list(AttrType)
_KEY_TYPES = [AttrType.INTEGER] * 4 + [AttrType.STRING, AttrType.DATE]
_BASE_DATE = dt.date(2021, 11, 28)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    max_relations: int = 6
    max_attrs: int = 8
    max_tuples: int = 50
    max_joins: int = 4
    inconsistency_injection: str | None = None
    cases: int = 100

    def __post_init__(self) -> None:
        for name in ("max_relations", "max_attrs", "max_tuples", "max_joins", "cases"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.max_attrs < 2:
            raise ValueError("max_attrs must be at least 2 to hold a key and a reference")
        if self.inconsistency_injection not in (None, *INJECTIONS):
            raise ValueError(f"unknown injection {self.inconsistency_injection!r}")

    def rng(self, case: int, attempt: int = 0) -> random.Random:
        return random.Random((self.seed * 1_000_003 + case) * 101 + attempt)


def random_value(rng: random.Random, t: AttrType, spread: int = 4) -> Value:
    k = rng.randrange(spread)
    if t is AttrType.INTEGER:
        return Value(t, k)
    if t is AttrType.FLOAT:
        return Value(t, [0.5, 1.0, 2.25, -3.0, 1e-05][k % 5])
    if t is AttrType.BOOLEAN:
        return Value(t, bool(k % 2))
    if t is AttrType.DATE:
        return Value(t, _BASE_DATE + dt.timedelta(days=k))
    if t is AttrType.OBJECT:
        return Value(t, f"obj-{k}")
    return Value(t, ["alpha", "beta", "it's", "Δ"][k % 4])


def _key_value(t: AttrType, k: int) -> Value:
    if t is AttrType.INTEGER:
        return Value(t, k)
    if t is AttrType.DATE:
        return Value(t, _BASE_DATE + dt.timedelta(days=k))
    return Value(t, f"key{k}")


def random_schema(rng: random.Random, cfg: GeneratorConfig) -> RelationalSchema:
    n = rng.randint(1, cfg.max_relations)
    names = [f"R{i}" for i in range(n)]
    keys: dict[str, dict[str, AttrType]] = {}
    for name in names:
        if rng.random() < 0.85:
            width = 2 if rng.random() < 0.2 else 1
            keys[name] = {f"k{i}": rng.choice(_KEY_TYPES) for i in range(width)}
    targets = list(keys)

    relations = []
    for name in names:
        attrs = dict(keys.get(name, {}))
        fks = []
        for j in range(rng.choice([0, 1, 1, 2, 2, 3])):
            if not targets:
                break
            target = rng.choice(targets)
            tkey = keys[target]
            if len(attrs) + len(tkey) > cfg.max_attrs:
                break
            cols = []
            for i, t in enumerate(tkey.values()):
                col = f"f{j}_{i}"
                attrs[col] = t
                cols.append(col)
            fks.append(ForeignKey(name, tuple(cols), target, tuple(tkey)))
        extra = rng.randint(0 if attrs else 1, max(0, cfg.max_attrs - len(attrs)))
        for i in range(extra):
            attrs[f"a{i}"] = rng.choice(_PLAIN_TYPES)
        pk = tuple(keys[name]) if name in keys else None
        relations.append(Relation(name, attrs, pk, tuple(fks)))
    return RelationalSchema(tuple(relations))


def random_database(rng: random.Random, cfg: GeneratorConfig) -> RelationalDatabase:
    """A random database that satisfies all of its keys."""
    schema = random_schema(rng, cfg)
    total = rng.randint(0, cfg.max_tuples)
    counts = {r.name: 0 for r in schema.relations}
    for _ in range(total):
        counts[rng.choice(schema.names)] += 1

    keys: dict[str, list[tuple[Value, ...]]] = {}
    for rel in schema.relations:
        pk = rel.primary_key or ()
        picks = rng.sample(range(3 * counts[rel.name] + 3), counts[rel.name])
        keys[rel.name] = [
            tuple(_key_value(rel.attributes[a], k if i == 0 else rng.randrange(3)) for i, a in enumerate(pk))
            for k in picks
        ]

    rows = {}
    for rel in schema.relations:
        fk_cols = {a for fk in rel.foreign_keys for a in fk.source_attrs}
        pk = rel.primary_key or ()
        tids = rng.sample(range(1, 10 * cfg.max_tuples + 10), counts[rel.name])
        records = []
        for n, tid in enumerate(tids):
            values = {}
            for a, t in rel.attributes.items():
                if a in pk:
                    values[a] = keys[rel.name][n][pk.index(a)]
                elif a not in fk_cols:
                    values[a] = NULL if rng.random() < 0.15 else random_value(rng, t)
            for fk in rel.foreign_keys:
                pool = keys[fk.target_relation]
                ref = rng.choice(pool) if pool and rng.random() > 0.15 else None
                for i, a in enumerate(fk.source_attrs):
                    values[a] = NULL if ref is None else ref[i]
            records.append(Record(tid, {a: values[a] for a in rel.attributes}))
        rows[rel.name] = tuple(records)
    return RelationalDatabase.build(schema, rows)


def _with_records(db: RelationalDatabase, relation: str, records) -> RelationalDatabase:
    rows = dict(db.instance.tuples)
    rows[relation] = tuple(records)
    return RelationalDatabase.build(db.schema, rows)


def inject(rng: random.Random, db: RelationalDatabase, kind: str) -> RelationalDatabase | None:
    """Return *db* with one violation of *kind*, or None when the schema or data
    leave no place for it."""
    schema, inst = db.schema, db.instance
    if kind == "pk-null":
        pool = [r for r in schema.relations if r.primary_key and inst[r.name]]
        if not pool:
            return None
        rel = rng.choice(pool)
        records = list(inst[rel.name])
        i = rng.randrange(len(records))
        vals = dict(records[i].values)
        vals[rng.choice(rel.primary_key)] = NULL
        records[i] = Record(records[i].tid, vals)
        return _with_records(db, rel.name, records)
    if kind == "pk-dup":
        pool = [r for r in schema.relations if r.primary_key and inst[r.name]]
        if not pool:
            return None
        rel = rng.choice(pool)
        records = list(inst[rel.name])
        src = rng.choice(records)
        if len(records) >= 2:
            i = rng.choice([k for k, t in enumerate(records) if t.tid != src.tid])
            vals = dict(records[i].values)
            vals.update((a, src[a]) for a in rel.primary_key)
            records[i] = Record(records[i].tid, vals)
        else:
            records.append(Record(max(t.tid for t in records) + 1, src.values))
        return _with_records(db, rel.name, records)
    if kind == "fk-dangling":
        pool = [(r, fk) for r in schema.relations for fk in r.foreign_keys if inst[r.name]]
        if not pool:
            return None
        rel, fk = rng.choice(pool)
        target_keys = {tuple(u[b] for b in fk.target_attrs) for u in inst[fk.target_relation]}
        records = list(inst[rel.name])
        i = rng.randrange(len(records))
        vals = dict(records[i].values)
        for k in range(1000, 2000):
            cand = tuple(_key_value(rel.attributes[a], k) for a in fk.source_attrs)
            if cand not in target_keys:
                break
        vals.update(zip(fk.source_attrs, cand))
        records[i] = Record(records[i].tid, vals)
        return _with_records(db, rel.name, records)
    raise ValueError(f"unknown injection {kind!r}")


def _sql_literal(rng: random.Random, v: Value) -> str:
    if v.is_null:
        return "NULL"
    if v.tag is AttrType.DATE:
        text = v.data.strftime("%d/%m/%Y") if rng.random() < 0.5 else v.data.isoformat()
        return f"'{text}'"
    if v.tag is AttrType.BOOLEAN:
        return "TRUE" if v.data else "FALSE"
    if v.tag in (AttrType.INTEGER, AttrType.FLOAT):
        return repr(v.data)
    return "'" + v.data.replace("'", "''") + "'"


def random_query(rng: random.Random, db: RelationalDatabase, cfg: GeneratorConfig) -> str:
    """SQL text for a random select-project-join query over *db*.

    Joins follow foreign keys (chains and stars, possibly the same relation more
    than once), plus optional cross-product entries and literal filters.
    """
    schema = db.schema
    rel0 = rng.choice(schema.relations)
    aliases = [("t0", rel0)]
    conds: list[str] = []
    for _ in range(rng.randint(0, cfg.max_joins)):
        options = []
        for x, rel in aliases:
            for fk in rel.foreign_keys:
                options.append((x, fk, "out"))
            for other in schema.relations:
                for fk in other.foreign_keys:
                    if fk.target_relation == rel.name:
                        options.append((x, fk, "in"))
        if not options:
            break
        x, fk, way = rng.choice(options)
        y = f"t{len(aliases)}"
        new_rel = schema.relation(fk.target_relation if way == "out" else fk.source_relation)
        aliases.append((y, new_rel))
        src, dst = (x, y) if way == "out" else (y, x)
        for a, b in zip(fk.source_attrs, fk.target_attrs):
            pair = [f"{src}.{a}", f"{dst}.{b}"]
            rng.shuffle(pair)
            conds.append(f"{pair[0]} = {pair[1]}")
    if len(aliases) < 3 and rng.random() < 0.15:
        aliases.append((f"t{len(aliases)}", rng.choice(schema.relations)))

    for _ in range(rng.choice([0, 0, 1, 1, 2])):
        x, rel = rng.choice(aliases)
        a, t = rng.choice(list(rel.attributes.items()))
        seen = [r[a] for r in db.instance[rel.name] if not r[a].is_null]
        v = rng.choice(seen) if seen and rng.random() < 0.8 else random_value(rng, t)
        op = rng.choice(["=", "=", "=", "<>", "<", "<=", ">", ">="])
        conds.append(f"{x}.{a} {op} {_sql_literal(rng, v)}")
    if len(aliases) > 1 and rng.random() < 0.2:
        (x, rx), (y, ry) = rng.sample(aliases, 2)
        same = [(a, b) for a, ta in rx.attributes.items() for b, tb in ry.attributes.items() if ta is tb]
        if same:
            a, b = rng.choice(same)
            conds.append(f"{x}.{a} {rng.choice(['=', '<>', '<'])} {y}.{b}")

    roll = rng.random()
    if roll < 0.08:
        items = ["*"]
    elif roll < 0.15:
        items = [f"{rng.choice(aliases)[0]}.*"]
    else:
        cols = [f"{x}.{a}" for x, rel in aliases for a in rel.attributes]
        items = rng.sample(cols, rng.randint(1, min(4, len(cols))))
    distinct = "DISTINCT " if rng.random() < 0.3 else ""
    text = f"SELECT {distinct}{', '.join(items)} FROM " + ", ".join(f"{r.name} {x}" for x, r in aliases)
    if conds:
        text += " WHERE " + " AND ".join(conds)
    return text


def case_database(cfg: GeneratorConfig, case: int, kind: str | None) -> RelationalDatabase:
    """Random database for *case*, carrying an injected *kind* violation if given.

    Redraws (deterministically) until the injection applies within the size bound.
    """
    for attempt in range(200):
        rng = cfg.rng(case, attempt)
        db = random_database(rng, cfg)
        if kind is None:
            return db
        bad = inject(rng, db, kind)
        if bad is not None and bad.instance.size() <= cfg.max_tuples:
            return bad
    raise RuntimeError(f"could not inject {kind} under {cfg}")


def injection_for(cfg: GeneratorConfig, case: int) -> str | None:
    """Odd cases are injected: the configured kind, or the three kinds in turn."""
    if case % 2 == 0:
        return None
    return cfg.inconsistency_injection or INJECTIONS[(case // 2) % len(INJECTIONS)]

