"""Complete mapping of relational databases to graph databases, and its inverse."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .errors import NotAMappedInstanceError, NotAMappedSchemaError
from .graph import VID, GraphDatabase, IEdge, InstanceGraph, IVertex, SchemaGraph, SEdge, SVertex
from .graph import validate_instance_graph
from .relational import (
    ForeignKey,
    Record,
    Relation,
    RelationalDatabase,
    RelationalInstance,
    RelationalSchema,
)
from .values import AttrType, Int


@dataclass(frozen=True)
class MappingReport:
    vertices: int
    edges: int
    tuples_per_relation: dict[str, int]
    edges_per_label: dict[str, int]
    warnings: tuple[str, ...] = field(default_factory=tuple)


def edge_labels(schema: RelationalSchema) -> dict[ForeignKey, str]:
    """Label of the schema edge for each foreign key.

    Labels read ``<referencing>-<referenced>``. When several foreign keys join the
    same relation pair, each gets the suffix ``#<source attrs joined by _>``.
    """
    fks = schema.foreign_keys
    pairs = Counter((fk.source_relation, fk.target_relation) for fk in fks)
    labels = {}
    for fk in fks:
        label = f"{fk.source_relation}-{fk.target_relation}"
        if pairs[fk.source_relation, fk.target_relation] > 1:
            label += "#" + "_".join(fk.source_attrs)
        labels[fk] = label
    return labels


def schema_map(sr: RelationalSchema) -> SchemaGraph:
    vertices = []
    for rel in sr.relations:
        attrs = dict(rel.attributes)
        attrs[VID] = AttrType.INTEGER
        vertices.append(SVertex(rel.name, attrs, rel.primary_key))
    labels = edge_labels(sr)
    edges = [
        SEdge(labels[fk], fk.source_relation, fk.target_relation, fk.source_attrs, fk.target_attrs)
        for fk in sr.foreign_keys
    ]
    return SchemaGraph(tuple(vertices), tuple(edges))


def instance_map(db: RelationalDatabase) -> InstanceGraph:
    """Map every tuple to a vertex and every satisfied reference to an edge.

    Inconsistent instances map as well; a reference produces an edge only when all
    its columns are non-NULL and equal the referenced key componentwise.
    """
    vertices = []
    vertex_of: dict[tuple[str, int], int] = {}
    for rel in db.schema.relations:
        for t in db.instance[rel.name]:
            vid = len(vertices) + 1
            props = dict(t.values)
            props[VID] = Int(t.tid)
            vertices.append(IVertex(vid, rel.name, props))
            vertex_of[rel.name, t.tid] = vid

    labels = edge_labels(db.schema)
    edges = []
    for fk in db.schema.foreign_keys:
        index = defaultdict(list)
        for u in db.instance[fk.target_relation]:
            key = tuple(u[b] for b in fk.target_attrs)
            if not any(v.is_null for v in key):
                index[key].append(u)
        for t in db.instance[fk.source_relation]:
            key = tuple(t[a] for a in fk.source_attrs)
            for u in index.get(key, ()):
                edges.append(IEdge(labels[fk],
                                   vertex_of[fk.source_relation, t.tid],
                                   vertex_of[fk.target_relation, u.tid]))
    return InstanceGraph(tuple(vertices), tuple(edges))


def complete_map(db: RelationalDatabase) -> tuple[GraphDatabase, MappingReport]:
    sg = schema_map(db.schema)
    ig = instance_map(db)
    report = MappingReport(
        vertices=len(ig.vertices),
        edges=len(ig.edges),
        tuples_per_relation={r.name: len(db.instance[r.name]) for r in db.schema.relations},
        edges_per_label=dict(Counter(e.label for e in ig.edges)),
    )
    return GraphDatabase(sg, ig), report


def schema_unmap(sg: SchemaGraph) -> RelationalSchema:
    fks: dict[str, list[ForeignKey]] = defaultdict(list)
    for e in sg.edges:
        fks[e.source_label].append(ForeignKey(e.source_label, e.fk_source, e.target_label, e.fk_target))
    relations = []
    for v in sg.vertices:
        if v.attrs.get(VID) is not AttrType.INTEGER:
            raise NotAMappedSchemaError(f"vertex {v.label} lacks the (vid:Integer) pair")
        attrs = {a: t for a, t in v.attrs.items() if a != VID}
        relations.append(Relation(v.label, attrs, v.pk, tuple(fks[v.label])))
    return RelationalSchema(tuple(relations))


def instance_unmap(ig: InstanceGraph, sg: SchemaGraph) -> RelationalInstance:
    problems = validate_instance_graph(ig, sg)
    if problems:
        raise NotAMappedInstanceError(f"instance graph does not conform: {problems[0]}")
    schema = schema_unmap(sg)
    rows: dict[str, list[Record]] = defaultdict(list)
    seen: dict[str, set[int]] = defaultdict(set)
    for v in ig.vertices:
        tid = v.props[VID].data
        if tid in seen[v.label]:
            raise NotAMappedInstanceError(f"duplicate vid {tid} among {v.label} vertices")
        seen[v.label].add(tid)
        declared = schema.relation(v.label).attributes
        missing = [a for a in declared if a not in v.props]
        if missing:
            raise NotAMappedInstanceError(f"vertex {v.id} ({v.label}) has no value for {missing}")
        rows[v.label].append(Record(tid, {a: v.props[a] for a in declared}))
    return RelationalInstance(schema, {k: tuple(ts) for k, ts in rows.items()})


def complete_unmap(gd: GraphDatabase) -> RelationalDatabase:
    instance = instance_unmap(gd.instance, gd.schema)
    return RelationalDatabase(instance.schema, instance)
