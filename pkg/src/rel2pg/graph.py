"""Property graphs: schema graphs with key annotations, instance graphs, consistency."""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InstanceError, SchemaError
from .relational import ConsistencyReport, Violation
from .values import AttrType, Value, compatible, key_equal

VID = "vid"


@dataclass(frozen=True)
class SVertex:
    label: str
    attrs: Mapping[str, AttrType]
    pk: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "attrs", dict(self.attrs))
        if self.pk is not None:
            object.__setattr__(self, "pk", tuple(self.pk))
            missing = [a for a in self.pk if a not in self.attrs]
            if missing:
                raise SchemaError(f"vertex {self.label}: Pk names unknown attributes {missing}")


@dataclass(frozen=True)
class SEdge:
    label: str
    source_label: str
    target_label: str
    fk_source: tuple[str, ...]
    fk_target: tuple[str, ...]
    attrs: Mapping[str, AttrType] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "fk_source", tuple(self.fk_source))
        object.__setattr__(self, "fk_target", tuple(self.fk_target))
        object.__setattr__(self, "attrs", dict(self.attrs))
        if len(self.fk_source) != len(self.fk_target):
            raise SchemaError(f"edge {self.label}: Fk(e,s) and Fk(e,d) differ in length")


@dataclass(frozen=True)
class SchemaGraph:
    vertices: tuple[SVertex, ...] = ()
    edges: tuple[SEdge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        by_label = {}
        for v in self.vertices:
            if v.label in by_label:
                raise SchemaError(f"duplicate schema vertex label {v.label!r}")
            by_label[v.label] = v
        for e in self.edges:
            s, d = by_label.get(e.source_label), by_label.get(e.target_label)
            if s is None or d is None:
                raise SchemaError(f"edge {e.label} connects unknown vertex labels")
            if not set(e.fk_source) <= s.attrs.keys() or not set(e.fk_target) <= d.attrs.keys():
                raise SchemaError(f"edge {e.label}: Fk attributes missing on endpoint vertices")

    def vertex(self, label: str) -> SVertex | None:
        for v in self.vertices:
            if v.label == label:
                return v
        return None


@dataclass(frozen=True)
class IVertex:
    id: int
    label: str
    props: Mapping[str, Value]

    def __post_init__(self) -> None:
        object.__setattr__(self, "props", dict(self.props))


@dataclass(frozen=True)
class IEdge:
    label: str
    source_id: int
    target_id: int
    props: Mapping[str, Value] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "props", dict(self.props))


@dataclass(frozen=True)
class InstanceGraph:
    vertices: tuple[IVertex, ...] = ()
    edges: tuple[IEdge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        ids = set()
        vids = defaultdict(set)
        for v in self.vertices:
            if v.id in ids:
                raise InstanceError(f"duplicate vertex id {v.id}")
            ids.add(v.id)
            vid = v.props.get(VID)
            if vid is None or vid.tag is not AttrType.INTEGER:
                raise InstanceError(f"vertex {v.id} needs a non-null integer vid")
            if vid.data in vids[v.label]:
                raise InstanceError(f"duplicate vid {vid.data} among {v.label} vertices")
            vids[v.label].add(vid.data)
        for e in self.edges:
            if e.source_id not in ids or e.target_id not in ids:
                raise InstanceError(f"edge {e.label} ({e.source_id}->{e.target_id}) has a dangling endpoint")

    def vertex_index(self) -> dict[int, IVertex]:
        return {v.id: v for v in self.vertices}


@dataclass(frozen=True)
class GraphDatabase:
    schema: SchemaGraph
    instance: InstanceGraph


def vertex_corresponds(vi: IVertex, vs: SVertex) -> bool:
    if vi.label != vs.label:
        return False
    return all(k in vs.attrs and compatible(c, vs.attrs[k]) for k, c in vi.props.items())


def edge_corresponds(ei: IEdge, es: SEdge, ig: InstanceGraph, sg: SchemaGraph) -> bool:
    if ei.label != es.label:
        return False
    if not all(k in es.attrs and compatible(c, es.attrs[k]) for k, c in ei.props.items()):
        return False
    index = ig.vertex_index()
    src, dst = index.get(ei.source_id), index.get(ei.target_id)
    s_vs, d_vs = sg.vertex(es.source_label), sg.vertex(es.target_label)
    if src is None or dst is None or s_vs is None or d_vs is None:
        return False
    return vertex_corresponds(src, s_vs) and vertex_corresponds(dst, d_vs)


def _edge_matches(ei: IEdge, es: SEdge, index, schema_index) -> bool:
    # edge_corresponds without rebuilding the vertex indexes per call
    if ei.label != es.label:
        return False
    if not all(k in es.attrs and compatible(c, es.attrs[k]) for k, c in ei.props.items()):
        return False
    return vertex_corresponds(index[ei.source_id], schema_index[es.source_label]) and \
        vertex_corresponds(index[ei.target_id], schema_index[es.target_label])


def validate_instance_graph(ig: InstanceGraph, sg: SchemaGraph) -> list[Violation]:
    """Structural conformance: every vertex and edge corresponds to a schema element."""
    schema_index = {v.label: v for v in sg.vertices}
    index = ig.vertex_index()
    out = []
    for v in ig.vertices:
        vs = schema_index.get(v.label)
        if vs is None:
            out.append(Violation("unknown-label", v.label, "vertex", (v.id,), "no schema vertex with this label"))
        elif not vertex_corresponds(v, vs):
            bad = [k for k, c in v.props.items() if k not in vs.attrs or not compatible(c, vs.attrs[k])]
            out.append(Violation("type-mismatch", v.label, "vertex", (v.id,), f"props {bad} not declared as typed"))
    for e in ig.edges:
        if not any(_edge_matches(e, es, index, schema_index) for es in sg.edges):
            out.append(Violation("uncorresponded-edge", e.label, "edge", (e.source_id, e.target_id),
                                 "no schema edge corresponds"))
    return out


def _pk_violations(ig: InstanceGraph, vs: SVertex) -> list[Violation]:
    members = [v for v in ig.vertices if v.label == vs.label]
    label = f"Pk {vs.label}[{', '.join(vs.pk)}]"
    out = []
    for v in members:
        nulls = [a for a in vs.pk if v.props.get(a) is None or v.props[a].is_null]
        if nulls:
            out.append(Violation("pk-null", vs.label, label, (v.id,), f"(a:NULL) for {', '.join(nulls)}"))
    for v, w in combinations(members, 2):
        if all(a in v.props and a in w.props and key_equal(v.props[a], w.props[a]) for a in vs.pk):
            out.append(Violation("pk-duplicate", vs.label, label, (v.id, w.id), "vertices agree on every Pk pair"))
    return out


def check_graph_consistency(ig: InstanceGraph, sg: SchemaGraph) -> ConsistencyReport:
    """Graph consistency of *ig* against the Pk/Fk annotations of *sg*.

    Besides the key and edge-endpoint rules, a vertex holding a non-NULL value in
    any Fk(e,s) attribute must have an outgoing edge corresponding to e
    (``fk-missing-edge``); otherwise a dangling reference would go unnoticed.
    """
    structural = validate_instance_graph(ig, sg)
    if structural:
        return ConsistencyReport.from_violations((), structural)

    index = ig.vertex_index()
    schema_index = {v.label: v for v in sg.vertices}
    out: list[Violation] = []
    for vs in sg.vertices:
        if vs.pk is not None:
            out += _pk_violations(ig, vs)

    for es in sg.edges:
        label = f"Fk {es.label}"
        holders = set()
        for ei in ig.edges:
            if not _edge_matches(ei, es, index, schema_index):
                continue
            src, dst = index[ei.source_id], index[ei.target_id]
            holders.add(src.id)
            bad = [
                (a, b) for a, b in zip(es.fk_source, es.fk_target)
                if not key_equal(src.props.get(a, Value(None)), dst.props.get(b, Value(None)))
            ]
            if bad:
                out.append(Violation("fk-mismatch", es.source_label, label, (src.id, dst.id),
                                     f"endpoint values differ on {bad}"))
        for v in ig.vertices:
            if v.label != es.source_label or v.id in holders:
                continue
            if any(not v.props.get(a, Value(None)).is_null for a in es.fk_source):
                out.append(Violation("fk-missing-edge", es.source_label, label, (v.id,),
                                     f"non-NULL {list(es.fk_source)} but no outgoing {es.label} edge"))
    return ConsistencyReport.from_violations(out)
