"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 inconsistent
database (``check``), 4 counterexample found (``verify``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cypher import render_cypher
from .errors import Rel2PGError
from .formats import emit_cypher_script, load_any, load_gdb, load_rdb, save_gdb, save_rdb
from .generators import GeneratorConfig
from .graph import GraphDatabase, check_graph_consistency
from .mapper import complete_map, complete_unmap
from .relational import check_relational_consistency
from .s2c import translate
from .sql import parse_sql, validate_and_alias
from .verifier import PROPERTIES, verify

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INCONSISTENT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rel2pg", description="Map relational databases to property graphs and back.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("map", help="relational database file -> graph database file")
    m.add_argument("--in", dest="inp", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--cypher-script", help="also write a Neo4j-loadable CREATE script")

    u = sub.add_parser("unmap", help="graph database file -> relational database file")
    u.add_argument("--in", dest="inp", required=True)
    u.add_argument("--out", required=True)

    t = sub.add_parser("translate", help="SQL query -> Cypher query")
    t.add_argument("--schema", required=True, help="relational database file supplying the schema")
    t.add_argument("--sql", required=True, help="file holding the SQL query")
    t.add_argument("--out", help="output file (default: standard output)")

    c = sub.add_parser("check", help="consistency of a relational or graph database file")
    c.add_argument("--in", dest="inp", required=True)

    v = sub.add_parser("verify", help="check information, query and semantic preservation")
    v.add_argument("--db", required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=100)
    v.add_argument("--property", choices=[*PROPERTIES, "all"], default="all")
    return p


def _map(args) -> int:
    gd, report = complete_map(load_rdb(args.inp))
    save_gdb(gd, args.out)
    if args.cypher_script:
        emit_cypher_script(gd, args.cypher_script)
    print(f"mapped {sum(report.tuples_per_relation.values())} tuples to "
          f"{report.vertices} vertices and {report.edges} edges", file=sys.stderr)
    return EXIT_OK


def _unmap(args) -> int:
    save_rdb(complete_unmap(load_gdb(args.inp)), args.out)
    return EXIT_OK


def _translate(args) -> int:
    schema = load_rdb(args.schema).schema
    try:
        text = Path(args.sql).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOError(f"cannot read {args.sql}: {exc.strerror}") from None
    cypher = render_cypher(translate(validate_and_alias(parse_sql(text), schema), schema)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(cypher)
    else:
        sys.stdout.write(cypher)
    return EXIT_OK


def _check(args) -> int:
    loaded = load_any(args.inp)
    if isinstance(loaded, GraphDatabase):
        report = check_graph_consistency(loaded.instance, loaded.schema)
        kind = "graph database"
    else:
        report = check_relational_consistency(loaded)
        kind = "relational database"
    for v in report.structural:
        print(f"structural: {v}")
    for v in report.violations:
        print(f"violation: {v}")
    print(f"{kind} is {'consistent' if report.consistent else 'inconsistent'}")
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def _verify(args) -> int:
    if args.cases < 1:
        raise _UsageError("--cases must be at least 1")
    db = load_rdb(args.db)
    cfg = GeneratorConfig(seed=args.seed, cases=args.cases)
    props = PROPERTIES if args.property == "all" else (args.property,)
    verdicts = verify(cfg, db, props)
    for v in verdicts:
        print(v.summary(), file=sys.stderr)
    json.dump([v.to_dict() for v in verdicts], sys.stdout, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")
    return EXIT_OK if all(v.ok for v in verdicts) else EXIT_COUNTEREXAMPLE


class _IOError(Exception):
    pass


_COMMANDS = {"map": _map, "unmap": _unmap, "translate": _translate, "check": _check, "verify": _verify}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (_IOError, OSError) as exc:
        print(f"rel2pg: {exc}", file=sys.stderr)
        return EXIT_IO
    except Rel2PGError as exc:
        print(f"rel2pg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
