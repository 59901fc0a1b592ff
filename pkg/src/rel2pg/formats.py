"""Canonical JSON files for relational and graph databases, and Cypher load scripts.

Every file carries ``"format"`` (``rel2pg-rdb`` or ``rel2pg-gdb``) and a semantic
``"version"``; loaders reject unknown major versions. Saving is canonical: keys
in fixed order, attributes in declared order, two-space indent, LF line endings,
so equal models serialize to identical bytes.
"""

from __future__ import annotations

import datetime as dt
import json
import math
from os import PathLike
from pathlib import Path
from typing import Any

from .cypher import cypher_literal, quote_name
from .errors import CypherEncodingError, FormatError, Rel2PGError
from .graph import GraphDatabase, IEdge, InstanceGraph, IVertex, SchemaGraph, SEdge, SVertex
from .relational import (
    ForeignKey,
    Record,
    Relation,
    RelationalDatabase,
    RelationalSchema,
)
from .values import NULL, AttrType, Value

RDB_FORMAT = "rel2pg-rdb"
GDB_FORMAT = "rel2pg-gdb"
FORMAT_VERSION = "1.0.0"
SUPPORTED_MAJOR = 1


def encode_value(v: Value) -> Any:
    if v.is_null:
        return None
    if v.tag is AttrType.DATE:
        return v.data.isoformat()
    return v.data


def decode_value(raw: Any, t: AttrType, path: str) -> Value:
    if raw is None:
        return NULL
    ok = {
        AttrType.STRING: isinstance(raw, str),
        AttrType.OBJECT: isinstance(raw, str),
        AttrType.DATE: isinstance(raw, str),
        AttrType.INTEGER: type(raw) is int,
        AttrType.FLOAT: type(raw) is float,
        AttrType.BOOLEAN: type(raw) is bool,
    }[t]
    if not ok:
        raise FormatError(f"{raw!r} is not a JSON encoding of {t.value}", path)
    if t is AttrType.DATE:
        try:
            return Value(t, dt.date.fromisoformat(raw))
        except ValueError:
            raise FormatError(f"{raw!r} is not an ISO calendar date", path) from None
    if t is AttrType.FLOAT and not math.isfinite(raw):
        raise FormatError("non-finite floats are not allowed", path)
    return Value(t, raw)


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _write(text: str, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _read_json(path: str | PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", "$") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# -- small structural helpers; each failure names its JSON path -------------


def _obj(doc: Any, path: str, keys: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(doc, dict):
        raise FormatError("expected an object", path)
    for k in keys:
        if k not in doc:
            raise FormatError(f"missing key {k!r}", path)
    extra = set(doc) - set(keys) - set(optional)
    if extra:
        raise FormatError(f"unexpected keys {sorted(extra)}", path)
    return doc


def _list(doc: Any, path: str) -> list:
    if not isinstance(doc, list):
        raise FormatError("expected an array", path)
    return doc


def _str(doc: Any, path: str) -> str:
    if not isinstance(doc, str):
        raise FormatError("expected a string", path)
    return doc


def _int(doc: Any, path: str) -> int:
    if type(doc) is not int:
        raise FormatError("expected an integer", path)
    return doc


def _names(doc: Any, path: str) -> tuple[str, ...]:
    return tuple(_str(x, f"{path}[{i}]") for i, x in enumerate(_list(doc, path)))


def _type(doc: Any, path: str) -> AttrType:
    try:
        return AttrType.parse(_str(doc, path))
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def _check_header(doc: Any, fmt: str) -> None:
    if not isinstance(doc, dict):
        raise FormatError("expected an object")
    if doc.get("format") != fmt:
        raise FormatError(f"expected format {fmt!r}, found {doc.get('format')!r}", "$.format")
    version = doc.get("version")
    if not isinstance(version, str) or not version.split(".")[0].isdigit():
        raise FormatError("missing or malformed version", "$.version")
    if int(version.split(".")[0]) != SUPPORTED_MAJOR:
        raise FormatError(f"unsupported major version {version}", "$.version")


def _typed_attrs(attrs: dict[str, AttrType]) -> list[dict]:
    return [{"name": a, "type": t.value} for a, t in attrs.items()]


def _read_typed_attrs(doc: Any, path: str) -> dict[str, AttrType]:
    out: dict[str, AttrType] = {}
    for i, a in enumerate(_list(doc, path)):
        p = f"{path}[{i}]"
        _obj(a, p, ("name", "type"))
        name = _str(a["name"], p + ".name")
        if name in out:
            raise FormatError(f"duplicate attribute {name!r}", p + ".name")
        out[name] = _type(a["type"], p + ".type")
    return out


# -- relational databases ----------------------------------------------------


def rdb_to_dict(db: RelationalDatabase) -> dict:
    relations = []
    for r in db.schema.relations:
        relations.append({
            "name": r.name,
            "attributes": _typed_attrs(r.attributes),
            "primary_key": list(r.primary_key) if r.primary_key is not None else None,
            "foreign_keys": [
                {
                    "attributes": list(fk.source_attrs),
                    "references": {"relation": fk.target_relation, "attributes": list(fk.target_attrs)},
                }
                for fk in r.foreign_keys
            ],
        })
    instance = {}
    for r in db.schema.relations:
        rows = []
        for t in db.instance[r.name]:
            row = {"tid": t.tid}
            row.update((a, encode_value(t[a])) for a in r.attributes)
            rows.append(row)
        instance[r.name] = rows
    return {
        "format": RDB_FORMAT,
        "version": FORMAT_VERSION,
        "schema": {"relations": relations},
        "instance": instance,
    }


def rdb_from_dict(doc: Any) -> RelationalDatabase:
    _check_header(doc, RDB_FORMAT)
    _obj(doc, "$", ("format", "version", "schema", "instance"))
    _obj(doc["schema"], "$.schema", ("relations",))
    relations = []
    for i, rd in enumerate(_list(doc["schema"]["relations"], "$.schema.relations")):
        p = f"$.schema.relations[{i}]"
        _obj(rd, p, ("name", "attributes"), ("primary_key", "foreign_keys"))
        name = _str(rd["name"], p + ".name")
        attrs = _read_typed_attrs(rd["attributes"], p + ".attributes")
        pk = rd.get("primary_key")
        pk = None if pk is None else _names(pk, p + ".primary_key")
        fks = []
        for j, fd in enumerate(_list(rd.get("foreign_keys", []), p + ".foreign_keys")):
            fp = f"{p}.foreign_keys[{j}]"
            _obj(fd, fp, ("attributes", "references"))
            _obj(fd["references"], fp + ".references", ("relation", "attributes"))
            try:
                fks.append(ForeignKey(
                    name,
                    _names(fd["attributes"], fp + ".attributes"),
                    _str(fd["references"]["relation"], fp + ".references.relation"),
                    _names(fd["references"]["attributes"], fp + ".references.attributes"),
                ))
            except Rel2PGError as exc:
                raise FormatError(str(exc), fp) from None
        try:
            relations.append(Relation(name, attrs, pk, tuple(fks)))
        except Rel2PGError as exc:
            raise FormatError(str(exc), p) from None
    try:
        schema = RelationalSchema(tuple(relations))
    except Rel2PGError as exc:
        raise FormatError(str(exc), "$.schema") from None

    inst_doc = doc["instance"]
    if not isinstance(inst_doc, dict):
        raise FormatError("expected an object", "$.instance")
    rows: dict[str, tuple[Record, ...]] = {}
    for rel_name, tuples in inst_doc.items():
        p = f"$.instance.{rel_name}"
        if not schema.has_relation(rel_name):
            raise FormatError(f"unknown relation {rel_name!r}", p)
        rel = schema.relation(rel_name)
        seen: set[int] = set()
        records = []
        for k, td in enumerate(_list(tuples, p)):
            tp = f"{p}[{k}]"
            _obj(td, tp, ("tid", *rel.attributes))
            tid = _int(td["tid"], tp + ".tid")
            if tid < 1:
                raise FormatError("tid must be positive", tp + ".tid")
            if tid in seen:
                raise FormatError(f"duplicate tid {tid} in relation {rel_name}", tp + ".tid")
            seen.add(tid)
            values = {a: decode_value(td[a], t, f"{tp}.{a}") for a, t in rel.attributes.items()}
            records.append(Record(tid, values))
        rows[rel_name] = tuple(records)
    return RelationalDatabase.build(schema, rows)


def dumps_rdb(db: RelationalDatabase) -> str:
    return _dumps(rdb_to_dict(db))


def loads_rdb(text: str) -> RelationalDatabase:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}") from None
    return rdb_from_dict(doc)


def save_rdb(db: RelationalDatabase, path: str | PathLike) -> None:
    _write(dumps_rdb(db), path)


def load_rdb(path: str | PathLike) -> RelationalDatabase:
    return rdb_from_dict(_read_json(path))


# -- graph databases ---------------------------------------------------------


def _props_to_json(props: dict[str, Value]) -> dict[str, Any]:
    return {k: encode_value(v) for k, v in props.items()}


def gdb_to_dict(gd: GraphDatabase) -> dict:
    sg, ig = gd.schema, gd.instance
    s_edges = []
    for e in sg.edges:
        d = {
            "label": e.label,
            "source_label": e.source_label,
            "target_label": e.target_label,
            "fk_source": list(e.fk_source),
            "fk_target": list(e.fk_target),
        }
        if e.attrs:
            d["attributes"] = _typed_attrs(e.attrs)
        s_edges.append(d)
    i_edges = []
    for e in ig.edges:
        d = {"label": e.label, "source_id": e.source_id, "target_id": e.target_id}
        if e.props:
            d["properties"] = _props_to_json(e.props)
        i_edges.append(d)
    return {
        "format": GDB_FORMAT,
        "version": FORMAT_VERSION,
        "schema_graph": {
            "vertices": [
                {"label": v.label, "attributes": _typed_attrs(v.attrs),
                 "pk": list(v.pk) if v.pk is not None else None}
                for v in sg.vertices
            ],
            "edges": s_edges,
        },
        "instance_graph": {
            "vertices": [
                {"id": v.id, "label": v.label, "properties": _props_to_json(v.props)}
                for v in ig.vertices
            ],
            "edges": i_edges,
        },
    }


def _read_props(doc: Any, declared: dict[str, AttrType], path: str) -> dict[str, Value]:
    if not isinstance(doc, dict):
        raise FormatError("expected an object", path)
    out = {}
    for k, raw in doc.items():
        if k not in declared:
            raise FormatError(f"property {k!r} is not declared on the schema element", f"{path}.{k}")
        out[k] = decode_value(raw, declared[k], f"{path}.{k}")
    return out


def gdb_from_dict(doc: Any) -> GraphDatabase:
    _check_header(doc, GDB_FORMAT)
    _obj(doc, "$", ("format", "version", "schema_graph", "instance_graph"))
    sgd = _obj(doc["schema_graph"], "$.schema_graph", ("vertices", "edges"))
    s_vertices = []
    for i, vd in enumerate(_list(sgd["vertices"], "$.schema_graph.vertices")):
        p = f"$.schema_graph.vertices[{i}]"
        _obj(vd, p, ("label", "attributes"), ("pk",))
        pk = vd.get("pk")
        try:
            s_vertices.append(SVertex(
                _str(vd["label"], p + ".label"),
                _read_typed_attrs(vd["attributes"], p + ".attributes"),
                None if pk is None else _names(pk, p + ".pk"),
            ))
        except Rel2PGError as exc:
            raise FormatError(str(exc), p) from None
    s_edges = []
    for i, ed in enumerate(_list(sgd["edges"], "$.schema_graph.edges")):
        p = f"$.schema_graph.edges[{i}]"
        _obj(ed, p, ("label", "source_label", "target_label", "fk_source", "fk_target"), ("attributes",))
        try:
            s_edges.append(SEdge(
                _str(ed["label"], p + ".label"),
                _str(ed["source_label"], p + ".source_label"),
                _str(ed["target_label"], p + ".target_label"),
                _names(ed["fk_source"], p + ".fk_source"),
                _names(ed["fk_target"], p + ".fk_target"),
                _read_typed_attrs(ed.get("attributes", []), p + ".attributes"),
            ))
        except Rel2PGError as exc:
            raise FormatError(str(exc), p) from None
    try:
        sg = SchemaGraph(tuple(s_vertices), tuple(s_edges))
    except Rel2PGError as exc:
        raise FormatError(str(exc), "$.schema_graph") from None

    vertex_types = {v.label: v.attrs for v in sg.vertices}
    edge_types: dict[str, dict[str, AttrType]] = {}
    for e in sg.edges:
        edge_types.setdefault(e.label, {}).update(e.attrs)

    igd = _obj(doc["instance_graph"], "$.instance_graph", ("vertices", "edges"))
    vertices = []
    ids: set[int] = set()
    vids: set[tuple[str, int]] = set()
    for i, vd in enumerate(_list(igd["vertices"], "$.instance_graph.vertices")):
        p = f"$.instance_graph.vertices[{i}]"
        _obj(vd, p, ("id", "label", "properties"))
        vid_ = _int(vd["id"], p + ".id")
        if vid_ in ids:
            raise FormatError(f"duplicate vertex id {vid_}", p + ".id")
        ids.add(vid_)
        label = _str(vd["label"], p + ".label")
        if label not in vertex_types:
            raise FormatError(f"no schema vertex labelled {label!r}", p + ".label")
        props = _read_props(vd["properties"], vertex_types[label], p + ".properties")
        vid = props.get("vid")
        if vid is None or vid.tag is not AttrType.INTEGER:
            raise FormatError("vertex needs an integer vid property", p + ".properties")
        if (label, vid.data) in vids:
            raise FormatError(f"duplicate vid {vid.data} within label {label}", p + ".properties.vid")
        vids.add((label, vid.data))
        vertices.append(IVertex(vid_, label, props))
    edges = []
    for i, ed in enumerate(_list(igd["edges"], "$.instance_graph.edges")):
        p = f"$.instance_graph.edges[{i}]"
        _obj(ed, p, ("label", "source_id", "target_id"), ("properties",))
        label = _str(ed["label"], p + ".label")
        src, dst = _int(ed["source_id"], p + ".source_id"), _int(ed["target_id"], p + ".target_id")
        for key, ref in (("source_id", src), ("target_id", dst)):
            if ref not in ids:
                raise FormatError(f"edge endpoint {ref} is not a vertex id", f"{p}.{key}")
        props = _read_props(ed.get("properties", {}), edge_types.get(label, {}), p + ".properties")
        edges.append(IEdge(label, src, dst, props))
    return GraphDatabase(sg, InstanceGraph(tuple(vertices), tuple(edges)))


def dumps_gdb(gd: GraphDatabase) -> str:
    return _dumps(gdb_to_dict(gd))


def loads_gdb(text: str) -> GraphDatabase:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}") from None
    return gdb_from_dict(doc)


def save_gdb(gd: GraphDatabase, path: str | PathLike) -> None:
    _write(dumps_gdb(gd), path)


def load_gdb(path: str | PathLike) -> GraphDatabase:
    return gdb_from_dict(_read_json(path))


def load_any(path: str | PathLike) -> RelationalDatabase | GraphDatabase:
    """Load either kind of file, dispatching on its format tag."""
    doc = _read_json(path)
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == RDB_FORMAT:
        return rdb_from_dict(doc)
    if fmt == GDB_FORMAT:
        return gdb_from_dict(doc)
    raise FormatError(f"unknown format tag {fmt!r}", "$.format")


# -- Cypher load scripts -----------------------------------------------------


def _prop_map(props: dict[str, Value], where: str) -> str:
    parts = []
    for k, v in props.items():
        if v.tag is AttrType.FLOAT and not math.isfinite(v.data):
            raise CypherEncodingError(f"{where}.{k}: {v.data!r} has no Cypher literal")
        parts.append(f"{quote_name(k)}: {cypher_literal(v)}")
    return "{" + ", ".join(parts) + "}"


def render_cypher_script(gd: GraphDatabase) -> str:
    """CREATE statements for every vertex, then MATCH-by-vid + CREATE for every edge."""
    ig = gd.instance
    lines = [f"// {GDB_FORMAT} {FORMAT_VERSION} load script",
             f"// {len(ig.vertices)} vertices, {len(ig.edges)} edges"]
    for v in ig.vertices:
        lines.append(f"CREATE (:{quote_name(v.label)} {_prop_map(v.props, f'vertex {v.id}')});")
    index = ig.vertex_index()
    for e in ig.edges:
        s, d = index[e.source_id], index[e.target_id]
        rel = f"[:{quote_name(e.label)}"
        rel += f" {_prop_map(e.props, f'edge {e.label}')}]" if e.props else "]"
        lines.append(
            f"MATCH (s:{quote_name(s.label)} {{vid: {s.props['vid'].data}}}), "
            f"(d:{quote_name(d.label)} {{vid: {d.props['vid'].data}}}) "
            f"CREATE (s)-{rel}->(d);"
        )
    return "\n".join(lines) + "\n"


def emit_cypher_script(gd: GraphDatabase, path: str | PathLike) -> None:
    _write(render_cypher_script(gd), path)
