"""Complete, invertible mapping from relational databases to property graphs,
with SQL-to-Cypher translation and executable preservation checks."""

from .cypher import parse_cypher, render_cypher
from .engines import ResultTable, compare_results, dedup, eval_cypher, eval_sql
from .graph import (
    GraphDatabase,
    IEdge,
    InstanceGraph,
    IVertex,
    SchemaGraph,
    SEdge,
    SVertex,
    check_graph_consistency,
    edge_corresponds,
    validate_instance_graph,
    vertex_corresponds,
)
from .mapper import complete_map, complete_unmap, instance_map, instance_unmap, schema_map, schema_unmap
from .relational import (
    ForeignKey,
    Record,
    Relation,
    RelationalDatabase,
    RelationalInstance,
    RelationalSchema,
    check_foreign_key,
    check_primary_key,
    check_relational_consistency,
)
from .s2c import detect_fk_joins, sql_to_cypher, translate
from .sql import parse_sql, render_sql, validate_and_alias
from .values import NULL, AttrType, Bool, Date, Flt, Int, Obj, Str, Value, type_of

__version__ = "0.1.0"

__all__ = [
    "parse_cypher",
    "render_cypher",
    "ResultTable",
    "compare_results",
    "dedup",
    "eval_cypher",
    "eval_sql",
    "GraphDatabase",
    "IEdge",
    "InstanceGraph",
    "IVertex",
    "SchemaGraph",
    "SEdge",
    "SVertex",
    "check_graph_consistency",
    "edge_corresponds",
    "validate_instance_graph",
    "vertex_corresponds",
    "complete_map",
    "complete_unmap",
    "instance_map",
    "instance_unmap",
    "schema_map",
    "schema_unmap",
    "ForeignKey",
    "Record",
    "Relation",
    "RelationalDatabase",
    "RelationalInstance",
    "RelationalSchema",
    "check_foreign_key",
    "check_primary_key",
    "check_relational_consistency",
    "detect_fk_joins",
    "sql_to_cypher",
    "translate",
    "parse_sql",
    "render_sql",
    "validate_and_alias",
    "NULL",
    "AttrType",
    "Bool",
    "Date",
    "Flt",
    "Int",
    "Obj",
    "Str",
    "Value",
    "type_of",
]
