"""Brute-force reference implementations, kept independent of the package internals."""

from itertools import product

from rel2pg.values import compare


def same(x, y):
    return not x.is_null and x == y


def pk_violations(records, pk):
    """(kind, tids) pairs by exhaustive scan over all ordered pairs."""
    out = []
    for t in records:
        if any(t[a].is_null for a in pk):
            out.append(("null-key", (t.tid,)))
    for i in range(len(records)):
        for j in range(len(records)):
            if i < j and all(same(records[i][a], records[j][a]) for a in pk):
                out.append(("duplicate-key", (records[i].tid, records[j].tid)))
    return out


def fk_violating_tids(source, target, fk):
    bad = []
    for t in source:
        vals = [t[a] for a in fk.source_attrs]
        if all(v.is_null for v in vals):
            continue
        matched = False
        for u in target:
            if all(same(v, u[b]) for v, b in zip(vals, fk.target_attrs)):
                matched = True
        if not matched or any(v.is_null for v in vals):
            bad.append(t.tid)
    return bad


def relational_consistent(db):
    for r in db.schema.relations:
        if r.primary_key and pk_violations(db.instance[r.name], r.primary_key):
            return False
    for fk in db.schema.foreign_keys:
        if fk_violating_tids(db.instance[fk.source_relation], db.instance[fk.target_relation], fk):
            return False
    return True


def fk_join_pairs(db, fk):
    """Nested-loop join: (source tid, target tid) for every satisfied reference."""
    return [
        (t.tid, u.tid)
        for t in db.instance[fk.source_relation]
        for u in db.instance[fk.target_relation]
        if all(same(t[a], u[b]) for a, b in zip(fk.source_attrs, fk.target_attrs))
    ]


def naive_sql(q, inst):
    """Full Cartesian product, then filter, then project; no pruning."""
    aliases = [e.alias for e in q.from_]
    rows = []
    for combo in product(*[inst[e.relation] for e in q.from_]):
        env = dict(zip(aliases, combo))

        def val(x):
            return env[x.var][x.name] if hasattr(x, "var") else x

        if all(compare(c.op, val(c.left), val(c.right)) for c in q.where):
            rows.append(tuple(env[r.var][r.name] for r in q.items))
    if q.distinct:
        rows = list(dict.fromkeys(rows))
    return rows


def brute_cypher(c, ig):
    """Enumerate every assignment of node variables and relationship positions."""
    from rel2pg.values import NULL

    vars_ = list(c.labels())
    labels = c.labels()
    rels = [(src.var, rel, dst.var) for p in c.match for src, rel, dst in p.hops()]
    rows = []
    for vs in product(ig.vertices, repeat=len(vars_)):
        env = dict(zip(vars_, vs))
        if any(labels[v] is not None and env[v].label != labels[v] for v in vars_):
            continue
        for es in product(range(len(ig.edges)), repeat=len(rels)):
            if len(set(es)) != len(es):
                continue  # edge-isomorphism
            ok = True
            for (s, rel, d), k in zip(rels, es):
                e = ig.edges[k]
                a, b = (s, d) if rel.direction == "out" else (d, s)
                if e.label != rel.label or e.source_id != env[a].id or e.target_id != env[b].id:
                    ok = False
                    break
            if not ok:
                continue

            def val(x):
                return env[x.var].props.get(x.name, NULL) if hasattr(x, "var") else x

            if all(compare(w.op, val(w.left), val(w.right)) for w in c.where):
                rows.append(tuple(val(r) for r in c.return_items))
    if c.distinct:
        rows = list(dict.fromkeys(rows))
    return rows
