from collections import Counter

import pytest
from hypothesis import given, settings

from oracles import fk_join_pairs
from strategies import generated_databases, small_databases
from rel2pg.errors import NotAMappedInstanceError, NotAMappedSchemaError
from rel2pg.formats import dumps_gdb, dumps_rdb
from rel2pg.graph import GraphDatabase, InstanceGraph, IVertex, SchemaGraph, SVertex
from rel2pg.mapper import (
    complete_map,
    complete_unmap,
    edge_labels,
    instance_map,
    instance_unmap,
    schema_map,
    schema_unmap,
)
from rel2pg.relational import ForeignKey, Record, Relation, RelationalDatabase, RelationalSchema
from rel2pg.values import NULL, AttrType, Int

I = AttrType.INTEGER


def test_hosp_schema_graph(db):
    sg = schema_map(db.schema)
    assert [v.label for v in sg.vertices] == ["Admissions", "Doctors", "Patients", "Diagnostics"]
    assert len(sg.edges) == 3
    adm = sg.vertex("Admissions")
    assert adm.pk == ("AdmiNo",)
    assert adm.attrs == {"AdmiNo": I, "Admi_date": AttrType.DATE, "Doc_No": I, "Pat_No": I, "vid": I}
    ad = next(e for e in sg.edges if e.label == "Admissions-Doctors")
    assert (ad.source_label, ad.target_label) == ("Admissions", "Doctors")
    assert (ad.fk_source, ad.fk_target) == (("Doc_No",), ("DoctorNo",))


def test_hosp_instance_graph(db):
    gd, report = complete_map(db)
    assert report.vertices == 14 and len(gd.instance.vertices) == 14
    # 3 doctor refs (one NULL), 4 patient refs, 3 diagnostic refs
    assert report.edges_per_label == {"Admissions-Doctors": 3, "Admissions-Patients": 4,
                                      "Diagnostics-Admissions": 3}
    v = gd.instance.vertices[3]
    assert v.props["Doc_No"] is NULL and v.props["vid"] == Int(104)


def _edges_by_tid(db, ig):
    vid_of = {v.id: (v.label, v.props["vid"].data) for v in ig.vertices}
    return Counter((e.label, vid_of[e.source_id][1], vid_of[e.target_id][1]) for e in ig.edges)


@settings(max_examples=200, deadline=None)
@given(generated_databases())
def test_edges_equal_nested_loop_join(db):
    labels = edge_labels(db.schema)
    want = Counter((labels[fk], s, t) for fk in db.schema.foreign_keys for s, t in fk_join_pairs(db, fk))
    assert _edges_by_tid(db, instance_map(db)) == want


@settings(max_examples=200, deadline=None)
@given(small_databases())
def test_edges_equal_nested_loop_join_small(db):
    labels = edge_labels(db.schema)
    want = Counter((labels[fk], s, t) for fk in db.schema.foreign_keys for s, t in fk_join_pairs(db, fk))
    assert _edges_by_tid(db, instance_map(db)) == want


@settings(max_examples=200, deadline=None)
@given(generated_databases())
def test_round_trip(db):
    back = complete_unmap(complete_map(db)[0])
    assert back == db
    assert dumps_rdb(back) == dumps_rdb(db)


@settings(max_examples=200, deadline=None)
@given(small_databases())
def test_vids_are_tids(db):
    ig = instance_map(db)
    assert Counter((v.label, v.props["vid"].data) for v in ig.vertices) == \
        Counter((r.name, t.tid) for r in db.schema.relations for t in db.instance[r.name])
    assert len(ig.vertices) == db.instance.size()


def test_mapping_is_deterministic(db):
    assert dumps_gdb(complete_map(db)[0]) == dumps_gdb(complete_map(db)[0])


def test_parallel_references_get_distinct_labels():
    schema = RelationalSchema((
        Relation("Doctors", {"DoctorNo": I}, ("DoctorNo",)),
        Relation("Admissions", {"AdmiNo": I, "Doc_In": I, "Doc_Out": I}, ("AdmiNo",), (
            ForeignKey("Admissions", ("Doc_In",), "Doctors", ("DoctorNo",)),
            ForeignKey("Admissions", ("Doc_Out",), "Doctors", ("DoctorNo",)),
        )),
    ))
    labels = sorted(e.label for e in schema_map(schema).edges)
    assert labels == ["Admissions-Doctors#Doc_In", "Admissions-Doctors#Doc_Out"]
    db = RelationalDatabase.build(schema, {
        "Doctors": (Record(1, {"DoctorNo": Int(1)}),),
        "Admissions": (Record(2, {"AdmiNo": Int(1), "Doc_In": Int(1), "Doc_Out": Int(1)}),),
    })
    assert len(instance_map(db).edges) == 2
    assert complete_unmap(complete_map(db)[0]) == db


def test_schema_unmap_requires_vid():
    with pytest.raises(NotAMappedSchemaError):
        schema_unmap(SchemaGraph((SVertex("A", {"x": I}),)))


def test_instance_unmap_rejects_missing_prop(db):
    sg = schema_map(db.schema)
    ig = InstanceGraph((IVertex(1, "Patients", {"PatientNo": Int(1), "vid": Int(1)}),))
    with pytest.raises(NotAMappedInstanceError):
        instance_unmap(ig, sg)


def test_instance_unmap_rejects_undeclared_prop(db):
    sg = schema_map(db.schema)
    ig = InstanceGraph((IVertex(1, "Patients", {"PatientNo": Int(1), "Name": NULL,
                                                "Age": Int(3), "vid": Int(1)}),))
    with pytest.raises(NotAMappedInstanceError):
        complete_unmap(GraphDatabase(sg, ig))
