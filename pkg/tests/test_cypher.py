import pytest

from rel2pg.cypher import cypher_literal, parse_cypher, quote_name, render_cypher
from rel2pg.errors import CypherSyntaxError, UnsupportedConstructError
from rel2pg.syntax import Condition, CypherQuery, NodePat, PathPat, Ref, RelPat
from rel2pg.values import NULL, Date, Flt, Int, Str


def test_quote_name():
    assert quote_name("Patients") == "Patients"
    assert quote_name("Admissions-Patients") == "`Admissions-Patients`"
    assert quote_name("odd`name") == "`odd``name`"


def test_literals():
    assert cypher_literal(Date("30/11/2021")) == 'date("2021-11-30")'
    assert cypher_literal(Str('say "hi"')) == '"say \\"hi\\""'
    assert cypher_literal(NULL) == "null"
    assert cypher_literal(Flt(2.5)) == "2.5"


def test_parse_textbook_example():
    text = """MATCH (p:Patients)<-[:Admissions-Patients]-(a:Admissions)
              WHERE a.Admi_date = "30/11/2021"
              RETURN p.Name"""
    c = parse_cypher(text)
    assert c.match == (PathPat((NodePat("p", "Patients"), RelPat("Admissions-Patients", "in"),
                                NodePat("a", "Admissions"))),)
    assert c.where == (Condition(Ref("a", "Admi_date"), "=", Str("30/11/2021")),)
    assert c.return_items == (Ref("p", "Name"),)


def test_render_parse_round_trip():
    c = CypherQuery(
        (PathPat((NodePat("a", "Admissions"), RelPat("Admissions-Doctors", "out"), NodePat("b", "Doctors"),
                  RelPat("X-Doctors", "in"), NodePat("a", "Admissions"))),
         PathPat((NodePat("z", "Z"),))),
        (Condition(Ref("a", "Admi_date"), ">=", Date("2021-11-30")), Condition(Ref("z", "k"), "<>", Int(-3))),
        (Ref("b", "Name"), Ref("z", "k")),
        distinct=True,
    )
    text = render_cypher(c)
    assert text.splitlines()[0] == ("MATCH (a:Admissions)-[:`Admissions-Doctors`]->(b:Doctors)"
                                    "<-[:`X-Doctors`]-(a), (z:Z)")
    assert text.splitlines()[-1] == "RETURN DISTINCT b.Name, z.k"
    back = parse_cypher(text)
    assert render_cypher(back) == text
    assert back.labels() == c.labels() and back.where == c.where and back.return_items == c.return_items


def test_no_where_line_without_conditions():
    c = CypherQuery((PathPat((NodePat("p", "Patients"),)),), (), (Ref("p", "Name"),))
    assert render_cypher(c) == "MATCH (p:Patients)\nRETURN p.Name"


@pytest.mark.parametrize("text", [
    "MATCH (a)-[:L]-(b) RETURN a.x",
    "MATCH (a) WHERE a.x = 1 OR a.x = 2 RETURN a.x",
    "OPTIONAL MATCH (a) RETURN a.x",
])
def test_unsupported(text):
    with pytest.raises(UnsupportedConstructError):
        parse_cypher(text)


@pytest.mark.parametrize("text", [
    "MATCH (a:A RETURN a.x",
    "MATCH (a:A)",
    "MATCH (a:A), (a:B) RETURN a.x",
    "MATCH (a:A) RETURN b.x",
])
def test_malformed(text):
    with pytest.raises((CypherSyntaxError, ValueError)):
        parse_cypher(text)
