import json

import pytest
from hypothesis import given, settings

from strategies import generated_databases
from rel2pg.errors import FormatError
from rel2pg.formats import (
    dumps_gdb,
    dumps_rdb,
    load_any,
    load_gdb,
    load_rdb,
    loads_gdb,
    loads_rdb,
    render_cypher_script,
    save_gdb,
    save_rdb,
)
from rel2pg.graph import GraphDatabase, InstanceGraph
from rel2pg.mapper import complete_map, schema_map
from rel2pg.relational import RelationalDatabase
from rel2pg.values import Flt, Int


def test_rdb_round_trip(db, tmp_path):
    path = tmp_path / "h.json"
    save_rdb(db, path)
    assert load_rdb(path) == db
    save_rdb(load_rdb(path), tmp_path / "again.json")
    assert path.read_bytes() == (tmp_path / "again.json").read_bytes()
    assert b"\r\n" not in path.read_bytes()


def test_gdb_round_trip(gd, tmp_path):
    path = tmp_path / "g.json"
    save_gdb(gd, path)
    assert load_gdb(path) == gd
    assert isinstance(load_any(path), GraphDatabase)


@settings(max_examples=100, deadline=None)
@given(generated_databases())
def test_round_trip_random(db):
    assert loads_rdb(dumps_rdb(db)) == db
    gd = complete_map(db)[0]
    text = dumps_gdb(gd)
    assert loads_gdb(text) == gd and dumps_gdb(loads_gdb(text)) == text


def test_shipped_hosp_file(db, data_dir):
    assert load_rdb(data_dir / "hosp.json") == db


def test_empty_graph(db):
    gd = GraphDatabase(schema_map(db.schema), InstanceGraph())
    assert loads_gdb(dumps_gdb(gd)) == gd
    script = render_cypher_script(gd)
    assert all(line.startswith("//") for line in script.splitlines())


def _doc(db):
    return json.loads(dumps_rdb(db))


def test_duplicate_tid_names_relation(db):
    doc = _doc(db)
    doc["instance"]["Doctors"][1]["tid"] = doc["instance"]["Doctors"][0]["tid"]
    with pytest.raises(FormatError, match="Doctors") as info:
        loads_rdb(json.dumps(doc))
    assert info.value.path == "$.instance.Doctors[1].tid"


def test_type_mismatch_path(db):
    doc = _doc(db)
    doc["instance"]["Admissions"][2]["Admi_date"] = 20211202
    with pytest.raises(FormatError) as info:
        loads_rdb(json.dumps(doc))
    assert info.value.path == "$.instance.Admissions[2].Admi_date"


def test_float_not_integer(db):
    doc = _doc(db)
    doc["instance"]["Patients"][0]["PatientNo"] = 1.0
    with pytest.raises(FormatError):
        loads_rdb(json.dumps(doc))


@pytest.mark.parametrize("version,ok", [("1.0.0", True), ("1.4.2", True), ("2.0.0", False), ("x", False)])
def test_version_check(db, version, ok):
    doc = _doc(db)
    doc["version"] = version
    if ok:
        assert loads_rdb(json.dumps(doc)) == db
    else:
        with pytest.raises(FormatError, match="version"):
            loads_rdb(json.dumps(doc))


def test_wrong_format_tag(gd):
    with pytest.raises(FormatError, match="format"):
        loads_rdb(dumps_gdb(gd))


def test_unknown_key_rejected(db):
    doc = _doc(db)
    doc["instance"]["Patients"][0]["Age"] = 3
    with pytest.raises(FormatError):
        loads_rdb(json.dumps(doc))


def test_dangling_edge_endpoint(gd):
    doc = json.loads(dumps_gdb(gd))
    doc["instance_graph"]["edges"][0]["target_id"] = 999
    with pytest.raises(FormatError, match="999"):
        loads_gdb(json.dumps(doc))


def test_duplicate_vid(gd):
    doc = json.loads(dumps_gdb(gd))
    vs = doc["instance_graph"]["vertices"]
    vs[1]["properties"]["vid"] = vs[0]["properties"]["vid"]
    with pytest.raises(FormatError):
        loads_gdb(json.dumps(doc))


def test_malformed_json():
    with pytest.raises(FormatError):
        loads_rdb("{not json")


def test_cypher_script(gd):
    lines = render_cypher_script(gd).splitlines()
    creates = [ln for ln in lines if ln.startswith("CREATE")]
    matches = [ln for ln in lines if ln.startswith("MATCH")]
    assert len(creates) == len(gd.instance.vertices)
    assert len(matches) == len(gd.instance.edges)
    assert "[:`Admissions-Doctors`]" in "\n".join(matches)
    assert "Admi_date: date(\"2021-11-30\")" in "\n".join(creates)
    assert "Doc_No: null" in "\n".join(creates)


def test_float_encoding_is_exact():
    from rel2pg.formats import decode_value, encode_value
    from rel2pg.values import AttrType

    for v in (Flt(0.1), Flt(1e-05), Flt(-3.0)):
        assert decode_value(json.loads(json.dumps(encode_value(v))), AttrType.FLOAT, "$") == v
    assert encode_value(Int(3)) == 3


def test_relational_empty_instance(db):
    empty = RelationalDatabase.build(db.schema, {})
    assert loads_rdb(dumps_rdb(empty)) == empty
