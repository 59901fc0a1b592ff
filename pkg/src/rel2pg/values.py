"""Attribute types and tagged data values shared by the relational and graph models."""

from __future__ import annotations

import datetime as dt
import enum
import math
import re
from dataclasses import dataclass
from typing import Any


class AttrType(enum.Enum):
    STRING = "String"
    DATE = "Date"
    INTEGER = "Integer"
    FLOAT = "Float"
    BOOLEAN = "Boolean"
    OBJECT = "Object"

    @classmethod
    def parse(cls, name: str) -> AttrType:
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown attribute type {name!r}") from None


class NullMarker(enum.Enum):
    """Type of the NULL value; compatible with every AttrType."""

    NULL = "Null"


NULL_TYPE = NullMarker.NULL

_DMY = re.compile(r"^(\d{1,2})/(\d{1,2})/(\d{4})$")
_ISO = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def parse_date_text(text: str) -> dt.date | None:
    """Parse ``YYYY-MM-DD`` or ``DD/MM/YYYY``; None when *text* is neither."""
    try:
        if _ISO.match(text):
            return dt.date.fromisoformat(text)
        m = _DMY.match(text)
        if m:
            return dt.date(int(m.group(3)), int(m.group(2)), int(m.group(1)))
    except ValueError:
        return None
    return None


@dataclass(frozen=True, slots=True)
class Value:
    """A tagged data value. ``tag is None`` encodes NULL.

    Equality is exact on (tag, data), so ``Int(1) != Flt(1.0)`` and
    ``Null == Null``; predicate semantics live in :func:`compare`.
    """

    tag: AttrType | None
    data: Any = None

    def __post_init__(self) -> None:
        t, d = self.tag, self.data
        ok = (
            (t is None and d is None)
            or (t is AttrType.STRING and isinstance(d, str))
            or (t is AttrType.OBJECT and isinstance(d, str))
            or (t is AttrType.INTEGER and type(d) is int)
            or (t is AttrType.FLOAT and type(d) is float and math.isfinite(d))
            or (t is AttrType.BOOLEAN and type(d) is bool)
            or (t is AttrType.DATE and type(d) is dt.date)
        )
        if not ok:
            raise TypeError(f"invalid payload {d!r} for tag {t}")

    @property
    def is_null(self) -> bool:
        return self.tag is None

    def __repr__(self) -> str:
        if self.tag is None:
            return "Null"
        return f"{self.tag.value}({self.data!r})"

    def __str__(self) -> str:
        if self.tag is None:
            return "NULL"
        if self.tag is AttrType.DATE:
            return self.data.isoformat()
        if self.tag is AttrType.BOOLEAN:
            return "true" if self.data else "false"
        return str(self.data)


NULL = Value(None)


def Str(s: str) -> Value:
    return Value(AttrType.STRING, s)


def Int(i: int) -> Value:
    return Value(AttrType.INTEGER, i)


def Flt(x: float) -> Value:
    return Value(AttrType.FLOAT, float(x))


def Bool(b: bool) -> Value:
    return Value(AttrType.BOOLEAN, bool(b))


def Date(d: dt.date | str) -> Value:
    if isinstance(d, str):
        parsed = parse_date_text(d)
        if parsed is None:
            raise ValueError(f"not a calendar date: {d!r}")
        d = parsed
    return Value(AttrType.DATE, d)


def Obj(s: str) -> Value:
    return Value(AttrType.OBJECT, s)


def type_of(v: Value) -> AttrType | NullMarker:
    return NULL_TYPE if v.tag is None else v.tag


def compatible(v: Value, declared: AttrType) -> bool:
    """NULL fits every declared type; anything else needs an exact tag match."""
    return v.tag is None or v.tag is declared


_NUMERIC = (AttrType.INTEGER, AttrType.FLOAT)
_TEXT = (AttrType.STRING, AttrType.OBJECT)

OPS = ("=", "<>", "<", "<=", ">", ">=")


def comparable_types(a: AttrType, b: AttrType) -> bool:
    return a is b or (a in _NUMERIC and b in _NUMERIC)


def _operands(x: Value, y: Value) -> tuple[Any, Any] | None:
    if x.tag is y.tag:
        return x.data, y.data
    if x.tag in _NUMERIC and y.tag in _NUMERIC:
        return x.data, y.data
    if x.tag in _TEXT and y.tag in _TEXT:
        return x.data, y.data
    # a textual date against a Date value, e.g. a.Admi_date = "30/11/2021"
    if x.tag is AttrType.DATE and y.tag is AttrType.STRING:
        d = parse_date_text(y.data)
        return (x.data, d) if d is not None else None
    if y.tag is AttrType.DATE and x.tag is AttrType.STRING:
        d = parse_date_text(x.data)
        return (d, y.data) if d is not None else None
    return None


def compare(op: str, x: Value, y: Value) -> bool:
    """Predicate truth of ``x op y``. Any comparison involving NULL is false."""
    if x.tag is None or y.tag is None:
        return False
    pair = _operands(x, y)
    if pair is None:
        return op == "<>"
    a, b = pair
    if op == "=":
        return a == b
    if op == "<>":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    raise ValueError(f"unknown comparison operator {op!r}")


def key_equal(x: Value, y: Value) -> bool:
    """Equality used for key and reference matching: NULL never matches."""
    return x.tag is not None and x == y


def normalize(v: Value) -> tuple:
    """Form-insensitive identity used when matching result rows across engines."""
    t = v.tag
    if t is None:
        return ("null",)
    if t in _NUMERIC:
        x = v.data
        if isinstance(x, float) and x.is_integer():
            x = int(x)
        return ("num", x)
    if t is AttrType.DATE:
        return ("date", v.data.isoformat())
    if t in _TEXT:
        d = parse_date_text(v.data)
        if d is not None:
            return ("date", d.isoformat())
        return ("text", v.data)
    return ("bool", v.data)
