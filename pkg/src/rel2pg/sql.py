"""Parser, validator and printer for SELECT [DISTINCT] … FROM … [WHERE … AND …] queries."""

from __future__ import annotations

from ._lexer import TokenStream, tokenize
from .errors import QueryValidationError, SqlSyntaxError, UnsupportedConstructError
from .relational import RelationalSchema
from .syntax import MIRROR, STAR, Condition, FromEntry, Ref, SqlQuery
from .values import (
    NULL,
    AttrType,
    Bool,
    Flt,
    Int,
    Obj,
    Str,
    Value,
    comparable_types,
    parse_date_text,
)

_RULES = [
    ("_WS", r"\s+"),
    ("_COMMENT", r"--[^\n]*"),
    ("STRING", r"'(?:[^']|'')*'|\"(?:[^\"]|\"\")*\""),
    ("NUMBER", r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"<>|!=|<=|>=|=|<|>"),
    ("PUNCT", r"[,.*();\-]"),
]

_UNSUPPORTED = {
    "OR": "OR", "NOT": "NOT", "IN": "IN", "GROUP": "GROUP BY", "ORDER": "ORDER BY",
    "HAVING": "HAVING", "LIMIT": "LIMIT", "OFFSET": "OFFSET", "UNION": "UNION",
    "INTERSECT": "INTERSECT", "EXCEPT": "EXCEPT", "JOIN": "JOIN", "INNER": "JOIN",
    "LEFT": "outer join", "RIGHT": "outer join", "FULL": "outer join", "CROSS": "JOIN",
    "ON": "JOIN … ON", "EXISTS": "EXISTS", "LIKE": "LIKE", "BETWEEN": "BETWEEN",
    "IS": "IS [NOT] NULL", "CASE": "CASE", "INSERT": "INSERT", "UPDATE": "UPDATE",
    "DELETE": "DELETE", "WITH": "WITH", "ALL": "ALL", "ANY": "ANY",
}
_AGGREGATES = {"COUNT", "SUM", "AVG", "MIN", "MAX"}
_KEYWORDS = {"SELECT", "DISTINCT", "FROM", "AS", "WHERE", "AND", "TRUE", "FALSE", "NULL"}


class _Parser:
    def __init__(self, text: str) -> None:
        self.ts = TokenStream(tokenize(text, _RULES, SqlSyntaxError), SqlSyntaxError)

    def unsupported(self, tok=None):
        tok = tok or self.ts.cur
        word = tok.text.upper()
        if tok.kind == "IDENT" and self.ts.peek().text == "(" and tok is self.ts.cur:
            name = f"aggregate {word}" if word in _AGGREGATES else f"function call {tok.text}"
            raise UnsupportedConstructError(name, tok.line, tok.col)
        if tok.kind == "PUNCT" and tok.text == "(":
            raise UnsupportedConstructError("parenthesized expression or subquery", tok.line, tok.col)
        if tok.kind == "IDENT" and word in _UNSUPPORTED:
            raise UnsupportedConstructError(_UNSUPPORTED[word], tok.line, tok.col)

    def ident(self, what: str) -> str:
        ts = self.ts
        self.unsupported()
        if ts.cur.kind != "IDENT" or ts.cur.text.upper() in _KEYWORDS:
            ts.fail(f"expected {what}")
        return ts.advance().text

    def query(self) -> SqlQuery:
        ts = self.ts
        self.unsupported()
        ts.expect_word("SELECT")
        distinct = False
        if ts.is_word("DISTINCT"):
            ts.advance()
            distinct = True
        items = [self.item()]
        while ts.is_punct(","):
            ts.advance()
            items.append(self.item())
        self.unsupported()
        ts.expect_word("FROM")
        from_ = [self.from_entry()]
        while ts.is_punct(","):
            ts.advance()
            from_.append(self.from_entry())
        where = []
        self.unsupported()
        if ts.is_word("WHERE"):
            ts.advance()
            where.append(self.condition())
            while True:
                self.unsupported()
                if not ts.is_word("AND"):
                    break
                ts.advance()
                where.append(self.condition())
        if ts.is_punct(";"):
            ts.advance()
        if ts.cur.kind != "EOF":
            self.unsupported()
            ts.fail("expected end of query")
        return SqlQuery(tuple(items), tuple(from_), tuple(where), distinct)

    def item(self) -> Ref:
        ts = self.ts
        if ts.is_punct("*"):
            ts.advance()
            return Ref(None, STAR)
        first = self.ident("select item")
        if ts.is_punct("."):
            ts.advance()
            if ts.is_punct("*"):
                ts.advance()
                return Ref(first, STAR)
            ref = Ref(first, self.ident("attribute name"))
        else:
            ref = Ref(None, first)
        if ts.is_word("AS"):
            raise UnsupportedConstructError("column alias in SELECT list", ts.cur.line, ts.cur.col)
        return ref

    def from_entry(self) -> FromEntry:
        ts = self.ts
        rel = self.ident("relation name")
        if ts.is_word("AS"):
            ts.advance()
            return FromEntry(rel, self.ident("alias"))
        self.unsupported()
        if ts.cur.kind == "IDENT" and ts.cur.text.upper() not in _KEYWORDS:
            return FromEntry(rel, ts.advance().text)
        return FromEntry(rel)

    def operand(self) -> Ref | Value:
        ts = self.ts
        tok = ts.cur
        if tok.kind == "STRING":
            ts.advance()
            q = tok.text[0]
            return Str(tok.text[1:-1].replace(q + q, q))
        if tok.kind == "NUMBER" or (ts.is_punct("-") and ts.peek().kind == "NUMBER"):
            sign = -1 if ts.is_punct("-") else 1
            if sign < 0:
                ts.advance()
            text = ts.advance().text
            if any(c in text for c in ".eE"):
                return Flt(sign * float(text))
            return Int(sign * int(text))
        if ts.is_word("TRUE", "FALSE"):
            return Bool(ts.advance().text.upper() == "TRUE")
        if ts.is_word("NULL"):
            ts.advance()
            return NULL
        self.unsupported()
        name = self.ident("column or literal")
        if ts.is_punct("."):
            ts.advance()
            return Ref(name, self.ident("attribute name"))
        return Ref(None, name)

    def condition(self) -> Condition:
        ts = self.ts
        start = ts.cur
        left = self.operand()
        self.unsupported()
        if ts.cur.kind != "OP":
            ts.fail("expected comparison operator")
        op = ts.advance().text
        op = "<>" if op == "!=" else op
        right = self.operand()
        if isinstance(left, Ref):
            return Condition(left, op, right)
        if isinstance(right, Ref):
            return Condition(right, MIRROR[op], left)
        raise SqlSyntaxError("a condition must mention at least one column", start.line, start.col)


def parse_sql(text: str) -> SqlQuery:
    """Parse query text; names are not resolved (see :func:`validate_and_alias`)."""
    return _Parser(text).query()


def _coerce_literal(v: Value, t: AttrType, where: str) -> Value:
    if v.is_null:
        return v
    if t is AttrType.DATE:
        if v.tag is AttrType.DATE:
            return v
        if v.tag is AttrType.STRING:
            d = parse_date_text(v.data)
            if d is not None:
                return Value(AttrType.DATE, d)
            raise QueryValidationError(f"{where}: {v.data!r} is not a date (use YYYY-MM-DD or DD/MM/YYYY)")
    elif t is AttrType.OBJECT and v.tag in (AttrType.STRING, AttrType.OBJECT):
        return Obj(v.data)
    elif comparable_types(v.tag, t):
        return v
    raise QueryValidationError(f"{where}: cannot compare {t.value} column with {v!r}")


def validate_and_alias(q: SqlQuery, schema: RelationalSchema) -> SqlQuery:
    """Resolve names against *schema*, alias every FROM entry, expand ``*``, type-check.

    Entries without an alias get ``r1``, ``r2``, … (skipping names already in use)
    and stay addressable by relation name.
    """
    qualifiers: dict[str, int] = {}
    for i, e in enumerate(q.from_):
        if not schema.has_relation(e.relation):
            raise QueryValidationError(f"unknown relation {e.relation!r}")
        name = e.alias or e.relation
        if name in qualifiers:
            raise QueryValidationError(f"{name!r} names more than one FROM entry; add aliases")
        qualifiers[name] = i

    taken = set(qualifiers) | set(schema.names)
    aliases = []
    n = 1
    for e in q.from_:
        if e.alias:
            aliases.append(e.alias)
            continue
        while f"r{n}" in taken:
            n += 1
        aliases.append(f"r{n}")
        taken.add(f"r{n}")
    entries = tuple(FromEntry(e.relation, a) for e, a in zip(q.from_, aliases))
    attrs = [schema.relation(e.relation).attributes for e in entries]

    def resolve(ref: Ref) -> tuple[Ref, AttrType]:
        if ref.var is None:
            hits = [i for i, a in enumerate(attrs) if ref.name in a]
            if not hits:
                raise QueryValidationError(f"unknown attribute {ref.name!r}")
            if len(hits) > 1:
                raise QueryValidationError(f"ambiguous unqualified attribute {ref.name!r}")
            i = hits[0]
        else:
            if ref.var not in qualifiers:
                raise QueryValidationError(f"unknown relation or alias {ref.var!r}")
            i = qualifiers[ref.var]
            if ref.name not in attrs[i]:
                raise QueryValidationError(f"relation {entries[i].relation} has no attribute {ref.name!r}")
        return Ref(aliases[i], ref.name), attrs[i][ref.name]

    items: list[Ref] = []
    for it in q.items:
        if it.name == STAR:
            if it.var is None:
                scope = range(len(entries))
            elif it.var in qualifiers:
                scope = [qualifiers[it.var]]
            else:
                raise QueryValidationError(f"unknown relation or alias {it.var!r}")
            items += [Ref(aliases[i], a) for i in scope for a in attrs[i]]
        else:
            items.append(resolve(it)[0])

    where = []
    for c in q.where:
        left, lt = resolve(c.left)
        if isinstance(c.right, Ref):
            right, rt = resolve(c.right)
            if not comparable_types(lt, rt):
                raise QueryValidationError(f"cannot compare {left} ({lt.value}) with {right} ({rt.value})")
            where.append(Condition(left, c.op, right))
        else:
            where.append(Condition(left, c.op, _coerce_literal(c.right, lt, str(left))))
    return SqlQuery(tuple(items), entries, tuple(where), q.distinct)


def _literal(v: Value) -> str:
    if v.is_null:
        return "NULL"
    if v.tag is AttrType.BOOLEAN:
        return "TRUE" if v.data else "FALSE"
    if v.tag in (AttrType.INTEGER, AttrType.FLOAT):
        return repr(v.data)
    return "'" + str(v).replace("'", "''") + "'"


def render_sql(q: SqlQuery) -> str:
    """Debugging printer; its output parses back to *q*."""
    out = ["SELECT "]
    if q.distinct:
        out.append("DISTINCT ")
    out.append(", ".join(str(i) for i in q.items))
    out.append(" FROM ")
    out.append(", ".join(e.relation + (f" AS {e.alias}" if e.alias else "") for e in q.from_))
    if q.where:
        conds = [
            f"{c.left} {c.op} {c.right if isinstance(c.right, Ref) else _literal(c.right)}"
            for c in q.where
        ]
        out.append(" WHERE " + " AND ".join(conds))
    return "".join(out)
