import json
import subprocess
import sys

import pytest

from rel2pg.cli import run
from rel2pg.fixtures import DATE_FILTER_SQL
from rel2pg.formats import save_rdb
from rel2pg.generators import inject


@pytest.fixture
def hosp_file(db, tmp_path):
    path = tmp_path / "hosp.json"
    save_rdb(db, path)
    return path


def test_map_unmap_byte_identical(hosp_file, tmp_path):
    g, back, script = tmp_path / "g.json", tmp_path / "back.json", tmp_path / "load.cypher"
    assert run(["map", "--in", str(hosp_file), "--out", str(g), "--cypher-script", str(script)]) == 0
    assert run(["unmap", "--in", str(g), "--out", str(back)]) == 0
    assert back.read_bytes() == hosp_file.read_bytes()
    assert sum(ln.startswith("CREATE (") for ln in script.read_text().splitlines()) == 14


def test_translate(hosp_file, tmp_path, capsys):
    sql = tmp_path / "q.sql"
    sql.write_text(DATE_FILTER_SQL)
    assert run(["translate", "--schema", str(hosp_file), "--sql", str(sql)]) == 0
    out = capsys.readouterr().out
    assert [ln.split()[0] for ln in out.splitlines()] == ["MATCH", "WHERE", "RETURN"]
    dest = tmp_path / "q.cypher"
    assert run(["translate", "--schema", str(hosp_file), "--sql", str(sql), "--out", str(dest)]) == 0
    assert dest.read_text() == out


def test_translate_bad_query(hosp_file, tmp_path, capsys):
    sql = tmp_path / "q.sql"
    sql.write_text("SELECT p.Name FROM Patients p WHERE p.Name = 'a' OR p.Name = 'b'")
    assert run(["translate", "--schema", str(hosp_file), "--sql", str(sql)]) == 2
    assert "OR" in capsys.readouterr().err


def test_check(db, hosp_file, tmp_path):
    import random

    assert run(["check", "--in", str(hosp_file)]) == 0
    bad = tmp_path / "bad.json"
    save_rdb(inject(random.Random(0), db, "pk-dup"), bad)
    assert run(["check", "--in", str(bad)]) == 3
    g = tmp_path / "bad_g.json"
    assert run(["map", "--in", str(bad), "--out", str(g)]) == 0
    assert run(["check", "--in", str(g)]) == 3


def test_verify(hosp_file, capsys):
    assert run(["verify", "--db", str(hosp_file), "--seed", "2", "--cases", "20"]) == 0
    verdicts = json.loads(capsys.readouterr().out)
    assert [v["property"] for v in verdicts] == ["IP", "SP", "QP"]
    assert all(v["cases_passed"] == v["cases_run"] == 20 for v in verdicts)


def test_verify_single_property(hosp_file, capsys):
    assert run(["verify", "--db", str(hosp_file), "--property", "qp", "--cases", "5"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 1


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["map", "--in", "x.json"],
    ["verify", "--db", "x.json", "--cases", "zero"],
    ["verify", "--db", "x.json", "--property", "xp"],
])
def test_usage_errors(argv):
    assert run(argv) == 1


def test_io_errors(tmp_path):
    assert run(["map", "--in", str(tmp_path / "missing.json"), "--out", str(tmp_path / "o.json")]) == 2
    junk = tmp_path / "junk.json"
    junk.write_text("[1, 2")
    assert run(["check", "--in", str(junk)]) == 2


def test_module_entry_point(hosp_file):
    proc = subprocess.run([sys.executable, "-m", "rel2pg", "check", "--in", str(hosp_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "consistent" in proc.stdout
