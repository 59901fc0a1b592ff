"""Syntax trees for the supported SQL and Cypher query classes."""

from __future__ import annotations

from dataclasses import dataclass

from .values import Value

STAR = "*"


@dataclass(frozen=True)
class Ref:
    """``var.name`` – a column of a FROM alias, or a property of a node variable.

    ``var`` is None for an unqualified SQL column; ``name`` is ``STAR`` for
    ``alias.*`` / ``*`` select items.
    """

    var: str | None
    name: str

    def __str__(self) -> str:
        return self.name if self.var is None else f"{self.var}.{self.name}"


MIRROR = {"=": "=", "<>": "<>", "<": ">", "<=": ">=", ">": "<", ">=": "<="}


@dataclass(frozen=True)
class Condition:
    left: Ref
    op: str
    right: Ref | Value

    @property
    def is_join(self) -> bool:
        return isinstance(self.right, Ref)

    def refs(self) -> list[Ref]:
        return [self.left, self.right] if isinstance(self.right, Ref) else [self.left]


@dataclass(frozen=True)
class FromEntry:
    relation: str
    alias: str | None = None


@dataclass(frozen=True)
class SqlQuery:
    items: tuple[Ref, ...]
    from_: tuple[FromEntry, ...]
    where: tuple[Condition, ...] = ()
    distinct: bool = False


@dataclass(frozen=True)
class NodePat:
    var: str
    label: str | None = None


@dataclass(frozen=True)
class RelPat:
    label: str
    direction: str  # "out": (x)-[:L]->(y); "in": (x)<-[:L]-(y)

    def __post_init__(self) -> None:
        if self.direction not in ("out", "in"):
            raise ValueError(f"direction must be 'out' or 'in', not {self.direction!r}")


@dataclass(frozen=True)
class PathPat:
    """Alternating nodes and relationships, starting and ending with a node."""

    elements: tuple[NodePat | RelPat, ...]

    def __post_init__(self) -> None:
        els = self.elements
        if not els or len(els) % 2 == 0:
            raise ValueError("a path pattern alternates node, rel, node, …")
        for i, el in enumerate(els):
            if isinstance(el, NodePat) != (i % 2 == 0):
                raise ValueError("a path pattern alternates node, rel, node, …")

    @property
    def nodes(self) -> tuple[NodePat, ...]:
        return self.elements[::2]

    def hops(self):
        """Yield ``(from_node, rel, to_node)`` triples along the path."""
        els = self.elements
        for i in range(1, len(els), 2):
            yield els[i - 1], els[i], els[i + 1]


@dataclass(frozen=True)
class CypherQuery:
    match: tuple[PathPat, ...]
    where: tuple[Condition, ...] = ()
    return_items: tuple[Ref, ...] = ()
    distinct: bool = False

    def __post_init__(self) -> None:
        labels: dict[str, str | None] = {}
        for path in self.match:
            for n in path.nodes:
                if labels.get(n.var) is None:
                    labels[n.var] = n.label
                elif n.label is not None and n.label != labels[n.var]:
                    raise ValueError(f"variable {n.var} has conflicting labels")
        for ref in [r for c in self.where for r in c.refs()] + list(self.return_items):
            if ref.var not in labels:
                raise ValueError(f"variable {ref.var!r} is not bound in MATCH")
        if not self.return_items:
            raise ValueError("RETURN needs at least one item")

    def labels(self) -> dict[str, str | None]:
        out: dict[str, str | None] = {}
        for path in self.match:
            for n in path.nodes:
                if out.get(n.var) is None:
                    out[n.var] = n.label
        return out
