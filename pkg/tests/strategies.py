"""Hypothesis strategies over small domains, so keys collide and references dangle often."""

from hypothesis import strategies as st

from rel2pg.generators import GeneratorConfig, case_database
from rel2pg.relational import ForeignKey, Record, Relation, RelationalDatabase, RelationalSchema
from rel2pg.values import NULL, AttrType, Int

I = AttrType.INTEGER

# P(k1, k2) with composite key; C(c, r1, r2) references P; C also references itself via s.
SMALL_SCHEMA = RelationalSchema((
    Relation("P", {"k1": I, "k2": I, "x": AttrType.STRING}, ("k1", "k2")),
    Relation(
        "C",
        {"c": I, "r1": I, "r2": I, "s": I},
        ("c",),
        (
            ForeignKey("C", ("r1", "r2"), "P", ("k1", "k2")),
            ForeignKey("C", ("s",), "C", ("c",)),
        ),
    ),
))

small_value = st.one_of(st.just(NULL), st.integers(0, 2).map(Int))


@st.composite
def small_databases(draw, max_rows=6):
    from rel2pg.values import Str

    tids = iter(draw(st.lists(st.integers(1, 500), min_size=2 * max_rows, max_size=2 * max_rows,
                              unique=True)))
    p = [
        Record(next(tids), {"k1": draw(small_value), "k2": draw(small_value),
                            "x": draw(st.sampled_from([NULL, Str("a"), Str("b")]))})
        for _ in range(draw(st.integers(0, max_rows)))
    ]
    c = [
        Record(next(tids), {a: draw(small_value) for a in ("c", "r1", "r2", "s")})
        for _ in range(draw(st.integers(0, max_rows)))
    ]
    return RelationalDatabase.build(SMALL_SCHEMA, {"P": tuple(p), "C": tuple(c)})


@st.composite
def generated_databases(draw, injected=None):
    """Databases from the package generator; with *injected*, one violation of that kind."""
    cfg = GeneratorConfig(seed=draw(st.integers(0, 10_000)), max_tuples=20)
    case = draw(st.integers(0, 50))
    kind = draw(st.sampled_from([None, "pk-null", "pk-dup", "fk-dangling"])) if injected is None else injected
    return case_database(cfg, case, kind)
