"""Relational schemas and instances, with primary/foreign key checking."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InstanceError, SchemaError, SchemaReferenceError
from .values import AttrType, Value, compatible, key_equal

RESERVED_ATTRIBUTES = frozenset({"tid", "vid"})


@dataclass(frozen=True)
class ForeignKey:
    source_relation: str
    source_attrs: tuple[str, ...]
    target_relation: str
    target_attrs: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "source_attrs", tuple(self.source_attrs))
        object.__setattr__(self, "target_attrs", tuple(self.target_attrs))
        if not self.source_attrs or len(self.source_attrs) != len(self.target_attrs):
            raise SchemaError(f"foreign key {self} needs equal, non-zero column counts")

    def __str__(self) -> str:
        return (
            f"{self.source_relation}[{', '.join(self.source_attrs)}] -> "
            f"{self.target_relation}[{', '.join(self.target_attrs)}]"
        )


@dataclass(frozen=True)
class Relation:
    name: str
    attributes: Mapping[str, AttrType]
    primary_key: tuple[str, ...] | None = None
    foreign_keys: tuple[ForeignKey, ...] = ()

    def __post_init__(self) -> None:
        attrs = self.attributes
        if not isinstance(attrs, Mapping):
            pairs = list(attrs)
            attrs = dict(pairs)
            if len(attrs) != len(pairs):
                raise SchemaError(f"relation {self.name}: duplicate attribute name")
        object.__setattr__(self, "attributes", dict(attrs))
        if self.primary_key is not None:
            object.__setattr__(self, "primary_key", tuple(self.primary_key))
        object.__setattr__(self, "foreign_keys", tuple(self.foreign_keys))

        for a, t in self.attributes.items():
            if a in RESERVED_ATTRIBUTES:
                raise SchemaError(f"relation {self.name}: attribute name {a!r} is reserved")
            if not isinstance(t, AttrType):
                raise SchemaError(f"relation {self.name}: attribute {a} has no valid type")
        if self.primary_key is not None:
            if not self.primary_key or len(set(self.primary_key)) != len(self.primary_key):
                raise SchemaError(f"relation {self.name}: malformed primary key")
            self._require_attrs(self.primary_key, "primary key")
        for fk in self.foreign_keys:
            if fk.source_relation != self.name:
                raise SchemaError(f"foreign key {fk} declared on relation {self.name}")
            self._require_attrs(fk.source_attrs, "foreign key")

    def _require_attrs(self, names: Iterable[str], what: str) -> None:
        for a in names:
            if a not in self.attributes:
                raise SchemaReferenceError(f"{what} of {self.name} names unknown attribute {a!r}")


@dataclass(frozen=True)
class RelationalSchema:
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "relations", tuple(self.relations))
        index = {}
        for r in self.relations:
            if r.name in index:
                raise SchemaError(f"duplicate relation name {r.name!r}")
            index[r.name] = r
        for fk in self.foreign_keys:
            target = index.get(fk.target_relation)
            if target is None:
                raise SchemaReferenceError(f"foreign key {fk} references unknown relation")
            if target.primary_key != fk.target_attrs:
                raise SchemaError(f"foreign key {fk} must reference the primary key of {target.name}")
            source = index[fk.source_relation]
            for a, b in zip(fk.source_attrs, fk.target_attrs):
                if source.attributes[a] is not target.attributes[b]:
                    raise SchemaError(f"foreign key {fk}: {a} and {b} have different types")

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise SchemaReferenceError(f"unknown relation {name!r}")

    def has_relation(self, name: str) -> bool:
        return any(r.name == name for r in self.relations)

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.relations]

    @property
    def foreign_keys(self) -> list[ForeignKey]:
        return [fk for r in self.relations for fk in r.foreign_keys]


@dataclass(frozen=True)
class Record:
    """One relational tuple: its tid plus a value for every attribute."""

    tid: int
    values: Mapping[str, Value]

    def __post_init__(self) -> None:
        if type(self.tid) is not int or self.tid < 1:
            raise InstanceError(f"tid must be a positive integer, got {self.tid!r}")
        object.__setattr__(self, "values", dict(self.values))

    def __getitem__(self, attr: str) -> Value:
        return self.values[attr]


@dataclass(frozen=True)
class RelationalInstance:
    """Tuples of every relation in *schema*, in insertion order."""

    schema: RelationalSchema
    tuples: Mapping[str, tuple[Record, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        given = dict(self.tuples)
        for name in given:
            if not self.schema.has_relation(name):
                raise SchemaReferenceError(f"instance holds tuples for unknown relation {name!r}")
        full = {}
        for rel in self.schema.relations:
            records = tuple(given.get(rel.name, ()))
            seen = set()
            for rec in records:
                if rec.tid in seen:
                    raise InstanceError(f"duplicate tid {rec.tid} in relation {rel.name}")
                seen.add(rec.tid)
                if rec.values.keys() != rel.attributes.keys():
                    raise InstanceError(
                        f"tuple {rec.tid} of {rel.name} must assign exactly {list(rel.attributes)}"
                    )
                for a, t in rel.attributes.items():
                    if not compatible(rec.values[a], t):
                        raise InstanceError(
                            f"tuple {rec.tid} of {rel.name}: {a}={rec.values[a]!r} is not {t.value}"
                        )
            full[rel.name] = records
        object.__setattr__(self, "tuples", full)

    def __getitem__(self, relation: str) -> tuple[Record, ...]:
        try:
            return self.tuples[relation]
        except KeyError:
            raise SchemaReferenceError(f"unknown relation {relation!r}") from None

    def size(self) -> int:
        return sum(len(ts) for ts in self.tuples.values())


@dataclass(frozen=True)
class RelationalDatabase:
    schema: RelationalSchema
    instance: RelationalInstance

    def __post_init__(self) -> None:
        if self.instance.schema != self.schema:
            raise InstanceError("instance was built against a different schema")

    @classmethod
    def build(
        cls, schema: RelationalSchema, rows: Mapping[str, Sequence[Record]] | None = None
    ) -> RelationalDatabase:
        return cls(schema, RelationalInstance(schema, rows or {}))


@dataclass(frozen=True)
class Violation:
    """One constraint violation. ``kind`` is a short machine-readable tag."""

    kind: str
    relation: str
    constraint: str
    tids: tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind} on {self.constraint} (tids {list(self.tids)}): {self.detail}"


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    violations: tuple[Violation, ...] = ()
    structural: tuple[Violation, ...] = ()

    @classmethod
    def from_violations(cls, violations, structural=()) -> ConsistencyReport:
        violations, structural = tuple(violations), tuple(structural)
        return cls(not violations and not structural, violations, structural)


def _pk_label(relation: str, pk: Sequence[str]) -> str:
    return f"PK {relation}[{', '.join(pk)}]"


def check_primary_key(
    instance: RelationalInstance, relation: str, pk: Sequence[str]
) -> list[Violation]:
    rel = instance.schema.relation(relation)
    for a in pk:
        if a not in rel.attributes:
            raise SchemaReferenceError(f"relation {relation} has no attribute {a!r}")
    label = _pk_label(relation, pk)
    records = instance[relation]
    out = []
    for t in records:
        nulls = [a for a in pk if t[a].is_null]
        if nulls:
            out.append(Violation("null-key", relation, label, (t.tid,), f"NULL in {', '.join(nulls)}"))
    for t, u in combinations(records, 2):
        if all(key_equal(t[a], u[a]) for a in pk):
            key = ", ".join(str(t[a]) for a in pk)
            out.append(Violation("duplicate-key", relation, label, (t.tid, u.tid), f"key ({key})"))
    return out


def check_foreign_key(instance: RelationalInstance, fk: ForeignKey) -> list[Violation]:
    schema = instance.schema
    src, dst = schema.relation(fk.source_relation), schema.relation(fk.target_relation)
    for a in fk.source_attrs:
        if a not in src.attributes:
            raise SchemaReferenceError(f"relation {src.name} has no attribute {a!r}")
    for b in fk.target_attrs:
        if b not in dst.attributes:
            raise SchemaReferenceError(f"relation {dst.name} has no attribute {b!r}")

    targets = instance[fk.target_relation]
    label = f"FK {fk}"
    out = []
    for t in instance[fk.source_relation]:
        vals = [t[a] for a in fk.source_attrs]
        n_null = sum(v.is_null for v in vals)
        if n_null == len(vals):
            continue
        if n_null:
            out.append(Violation("partial-null-reference", fk.source_relation, label, (t.tid,),
                                 "some but not all referencing columns are NULL"))
            continue
        if not any(
            all(key_equal(v, u[b]) for v, b in zip(vals, fk.target_attrs)) for u in targets
        ):
            shown = ", ".join(str(v) for v in vals)
            out.append(Violation("dangling-reference", fk.source_relation, label, (t.tid,),
                                 f"no {fk.target_relation} tuple with key ({shown})"))
    return out


def check_relational_consistency(db: RelationalDatabase) -> ConsistencyReport:
    violations: list[Violation] = []
    for rel in db.schema.relations:
        if rel.primary_key is not None:
            violations += check_primary_key(db.instance, rel.name, rel.primary_key)
    for fk in db.schema.foreign_keys:
        violations += check_foreign_key(db.instance, fk)
    return ConsistencyReport.from_violations(violations)
