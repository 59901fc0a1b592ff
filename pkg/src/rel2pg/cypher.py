"""Printer and parser for the MATCH … WHERE … RETURN Cypher subset."""

from __future__ import annotations

import re

from ._lexer import TokenStream, tokenize
from .errors import CypherSyntaxError, UnsupportedConstructError
from .syntax import MIRROR, Condition, CypherQuery, NodePat, PathPat, Ref, RelPat
from .values import NULL, AttrType, Bool, Date, Flt, Int, Str, Value

_PLAIN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def quote_name(name: str) -> str:
    """Backtick-quote labels and keys that are not plain identifiers."""
    if _PLAIN.match(name):
        return name
    return "`" + name.replace("`", "``") + "`"


def cypher_string(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def cypher_literal(v: Value) -> str:
    if v.is_null:
        return "null"
    t = v.tag
    if t is AttrType.BOOLEAN:
        return "true" if v.data else "false"
    if t in (AttrType.INTEGER, AttrType.FLOAT):
        return repr(v.data)
    if t is AttrType.DATE:
        return f'date("{v.data.isoformat()}")'
    return cypher_string(v.data)


def _ref(r: Ref) -> str:
    return f"{r.var}.{quote_name(r.name)}"


def render_cypher(c: CypherQuery) -> str:
    seen: set[str] = set()
    paths = []
    for path in c.match:
        parts = []
        for el in path.elements:
            if isinstance(el, NodePat):
                if el.label is not None and el.var not in seen:
                    parts.append(f"({el.var}:{quote_name(el.label)})")
                else:
                    parts.append(f"({el.var})")
                seen.add(el.var)
            elif el.direction == "out":
                parts.append(f"-[:{quote_name(el.label)}]->")
            else:
                parts.append(f"<-[:{quote_name(el.label)}]-")
        paths.append("".join(parts))
    lines = ["MATCH " + ", ".join(paths)]
    if c.where:
        conds = [
            f"{_ref(w.left)} {w.op} {_ref(w.right) if isinstance(w.right, Ref) else cypher_literal(w.right)}"
            for w in c.where
        ]
        lines.append("WHERE " + " AND ".join(conds))
    ret = ", ".join(_ref(r) for r in c.return_items)
    lines.append(("RETURN DISTINCT " if c.distinct else "RETURN ") + ret)
    return "\n".join(lines)


_RULES = [
    ("_WS", r"\s+"),
    ("_COMMENT", r"//[^\n]*"),
    ("STRING", r"\"(?:[^\"\\]|\\.)*\"|'(?:[^'\\]|\\.)*'"),
    ("QUOTED", r"`(?:[^`]|``)*`"),
    ("NUMBER", r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"<>|<=|>=|=|<|>"),
    ("PUNCT", r"[()\[\]:,.\-;]"),
]
_UNSUPPORTED = {
    "OR", "NOT", "XOR", "OPTIONAL", "WITH", "ORDER", "SKIP", "LIMIT", "UNWIND",
    "CREATE", "MERGE", "DELETE", "SET", "REMOVE", "UNION", "CALL", "IN", "IS",
}
_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", '"': '"', "'": "'"}


def _unescape(body: str) -> str:
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), body)


class _Parser:
    def __init__(self, text: str) -> None:
        self.ts = TokenStream(tokenize(text, _RULES, CypherSyntaxError), CypherSyntaxError)

    def check_supported(self) -> None:
        tok = self.ts.cur
        if tok.kind == "IDENT" and tok.text.upper() in _UNSUPPORTED:
            raise UnsupportedConstructError(tok.text.upper(), tok.line, tok.col)

    def name(self, what: str) -> str:
        ts = self.ts
        if ts.cur.kind == "QUOTED":
            return ts.advance().text[1:-1].replace("``", "`")
        if ts.cur.kind == "IDENT":
            return ts.advance().text
        ts.fail(f"expected {what}")

    def query(self) -> CypherQuery:
        ts = self.ts
        self.check_supported()
        ts.expect_word("MATCH")
        paths = [self.path()]
        while ts.is_punct(","):
            ts.advance()
            paths.append(self.path())
        where = []
        self.check_supported()
        if ts.is_word("WHERE"):
            ts.advance()
            where.append(self.condition())
            while True:
                self.check_supported()
                if not ts.is_word("AND"):
                    break
                ts.advance()
                where.append(self.condition())
        self.check_supported()
        ts.expect_word("RETURN")
        distinct = False
        if ts.is_word("DISTINCT"):
            ts.advance()
            distinct = True
        items = [self.prop_ref()]
        while ts.is_punct(","):
            ts.advance()
            items.append(self.prop_ref())
        if ts.is_punct(";"):
            ts.advance()
        if ts.cur.kind != "EOF":
            self.check_supported()
            ts.fail("expected end of query")
        try:
            return CypherQuery(tuple(paths), tuple(where), tuple(items), distinct)
        except ValueError as exc:
            raise CypherSyntaxError(str(exc), 1, 1) from None

    def node(self) -> NodePat:
        ts = self.ts
        ts.expect_punct("(")
        var = self.name("node variable")
        label = None
        if ts.is_punct(":"):
            ts.advance()
            label = self.name("label")
        ts.expect_punct(")")
        return NodePat(var, label)

    def rel_label(self) -> str:
        ts = self.ts
        ts.expect_punct("[")
        if not ts.is_punct(":"):
            ts.fail("expected ':' and a relationship type")
        ts.advance()
        label = self.name("relationship type")
        # unquoted hyphenated types such as Admissions-Patients
        while ts.is_punct("-") and ts.peek().kind == "IDENT":
            ts.advance()
            label += "-" + ts.advance().text
        ts.expect_punct("]")
        return label

    def path(self) -> PathPat:
        ts = self.ts
        elements: list = [self.node()]
        while ts.is_punct("-") or ts.is_punct("<"):
            if ts.is_punct("<"):
                ts.advance()
                ts.expect_punct("-")
                label = self.rel_label()
                ts.expect_punct("-")
                rel = RelPat(label, "in")
            else:
                ts.advance()
                label = self.rel_label()
                ts.expect_punct("-")
                if not ts.is_punct(">"):
                    raise UnsupportedConstructError("undirected relationship", ts.cur.line, ts.cur.col)
                ts.advance()
                rel = RelPat(label, "out")
            elements += [rel, self.node()]
        return PathPat(tuple(elements))

    def prop_ref(self) -> Ref:
        var = self.name("variable")
        self.ts.expect_punct(".")
        return Ref(var, self.name("property key"))

    def operand(self) -> Ref | Value:
        ts = self.ts
        tok = ts.cur
        if tok.kind == "STRING":
            ts.advance()
            return Str(_unescape(tok.text[1:-1]))
        if tok.kind == "NUMBER" or (ts.is_punct("-") and ts.peek().kind == "NUMBER"):
            sign = -1 if ts.is_punct("-") else 1
            if sign < 0:
                ts.advance()
            text = ts.advance().text
            return Flt(sign * float(text)) if any(c in text for c in ".eE") else Int(sign * int(text))
        if ts.is_word("TRUE", "FALSE"):
            return Bool(ts.advance().text.lower() == "true")
        if ts.is_word("NULL"):
            ts.advance()
            return NULL
        if ts.is_word("DATE") and ts.peek().text == "(":
            ts.advance()
            ts.advance()
            if ts.cur.kind != "STRING":
                ts.fail("expected a date string")
            text = _unescape(ts.advance().text[1:-1])
            ts.expect_punct(")")
            try:
                return Date(text)
            except ValueError:
                raise CypherSyntaxError(f"invalid date {text!r}", tok.line, tok.col) from None
        self.check_supported()
        return self.prop_ref()

    def condition(self) -> Condition:
        ts = self.ts
        start = ts.cur
        left = self.operand()
        self.check_supported()
        if ts.cur.kind != "OP":
            ts.fail("expected comparison operator")
        op = ts.advance().text
        right = self.operand()
        if isinstance(left, Ref):
            return Condition(left, op, right)
        if isinstance(right, Ref):
            return Condition(right, MIRROR[op], left)
        raise CypherSyntaxError("a condition must mention a property", start.line, start.col)


def parse_cypher(text: str) -> CypherQuery:
    return _Parser(text).query()
