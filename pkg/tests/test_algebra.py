import pytest

from omegacat.algebra import (
    CellMap,
    FreeWeakCell,
    StrictFunctor,
    free_weak,
    hom,
    identity_functor,
    strict_as_weak,
    validate_strict_table,
    whisker,
)
from omegacat.errors import DimensionError, TableError, UnsupportedEvalError
from omegacat.globset import SOURCE, TARGET, CellRef, GlobularSet
from omegacat.harness import (
    cat_table,
    chain_poset,
    cyclic_group_category,
    diamond_poset,
    functor_by_names,
    idempotent_monoid_category,
    materialize,
    suspension,
    two_squares_twocat,
    walking_arrow,
    walking_iso,
)
from omegacat.instructions import (
    INSTR_HOST,
    Unit,
    arity,
    comp_instr,
    id_instr,
    l1_compose,
    sp,
)
from omegacat.pasting import (
    diagram_from_entries,
    unit_diagram,
    validate_scheme,
)


def two_globe_set():
    return GlobularSet(
        [["x", "y"], ["u", "v"], ["w"]],
        [[0, 0], [0]],
        [[1, 1], [1]],
    )


# -- strict tables ----------------------------------------------------------


def test_group_table_validates():
    assert validate_strict_table(cat_table(cyclic_group_category(3))) == []


def test_terminal_category_validates():
    assert validate_strict_table(cat_table(chain_poset(1))) == []


def test_broken_associativity_is_named():
    table = cat_table(cyclic_group_category(3))
    rule = dict(table.comp[(0, 1)])
    rule[(1, 1)] = 1  # 1+1 = 1 breaks the group law
    table.comp[(0, 1)] = rule
    problems = validate_strict_table(table)
    assert any("associativity" in p or "unit" in p for p in problems)


def test_thin_category_composition():
    X = strict_as_weak(cat_table(chain_poset(3)))
    f = X.ref("p0<p1")
    g = X.ref("p1<p2")
    assert X.compose(f, g, 0, 1) == X.ref("p0<p2")


def test_strict_bracketings_agree():
    X = strict_as_weak(cat_table(chain_poset(4)))
    f, g, h = X.ref("p0<p1"), X.ref("p1<p2"), X.ref("p2<p3")
    left = X.compose(X.compose(f, g, 0, 1), h, 0, 1)
    right = X.compose(f, X.compose(g, h, 0, 1), 0, 1)
    scheme = validate_scheme([1, 1, 1], [0, 0], 1)
    args = diagram_from_entries(X, scheme, [f, g, h])
    unbiased = X.eval(sp(scheme), args)
    assert left == right == unbiased == X.ref("p0<p3")


def test_strict_eval_depends_only_on_arity():
    X = strict_as_weak(cat_table(chain_poset(4)))
    f, g, h = X.ref("p0<p1"), X.ref("p1<p2"), X.ref("p2<p3")
    scheme = validate_scheme([1, 1, 1], [0, 0], 1)
    args = diagram_from_entries(X, scheme, [f, g, h])
    pair = l1_compose(Unit(1), Unit(1), 0, 1)
    for instr in (sp(scheme), l1_compose(pair, Unit(1), 0, 1), l1_compose(Unit(1), pair, 0, 1)):
        assert arity(instr) == scheme
        assert X.eval(instr, args) == X.ref("p0<p3")


def test_two_squares_interchange_grid():
    T = strict_as_weak(two_squares_twocat())
    al, be = T.ref("al"), T.ref("be")
    g, h = T.ref("g"), T.ref("h")
    # (al *_0 h-id) *_1 (g-id *_0 be) == al *_0 be == (f-id *_0 be) *_1 (al *_0 k-id)
    top = T.compose(al, T.identity(h, 2), 0, 2)
    bottom = T.compose(T.identity(g, 2), be, 0, 2)
    one_way = T.compose(top, bottom, 1, 2)
    direct = T.compose(al, be, 0, 2)
    other_top = T.compose(T.identity(T.ref("f"), 2), be, 0, 2)
    other_bottom = T.compose(al, T.identity(T.ref("k"), 2), 0, 2)
    other_way = T.compose(other_top, other_bottom, 1, 2)
    assert one_way == direct == other_way


def test_interchange_via_glue_oracle():
    # evaluating the 2x1 grid as one pasting diagram agrees with both
    # nested binary evaluations
    T = strict_as_weak(two_squares_twocat())
    al, be = T.ref("al"), T.ref("be")
    scheme = validate_scheme([2, 2], [0], 2)
    args = diagram_from_entries(T, scheme, [al, be])
    assert T.eval(sp(scheme), args) == T.compose(al, be, 0, 2)


def test_identity_is_iterated_table_id():
    X = strict_as_weak(materialize(cat_table(walking_iso()), 2))
    a = X.ref("c0")
    id1 = X.identity(a, 1)
    assert X.name_of(id1) == "1c0"
    id2 = X.identity(a, 2)
    assert id2 == X.ref("id2(1c0)")


def test_formal_identities_above_truncation():
    X = strict_as_weak(cat_table(walking_iso()))
    f = X.ref("c0~c1")
    u = X.identity(f, 3)
    assert u == CellRef(3, f.index)
    assert X.boundary(u, 1, SOURCE) == f
    assert X.dim(u) == 3
    v = X.compose(u, X.identity(X.ref("c1~c0"), 3), 0, 3)
    assert X.boundary(v, 1, SOURCE) == X.ref("1c0")


def test_strict_eval_pads_lower_entries():
    # alpha *_0 h with h one dimension lower
    T = strict_as_weak(two_squares_twocat())
    al, h = T.ref("al"), T.ref("h")
    scheme = validate_scheme([2, 1], [0], 2)
    args = diagram_from_entries(T, scheme, [al, h])
    out = T.eval(sp(scheme), args)
    assert out == T.compose(al, T.identity(h, 2), 0, 2)


# -- free weak categories -----------------------------------------------------


def test_free_unit_law():
    G = two_globe_set()
    F = free_weak(G)
    for name in ("x", "u", "w"):
        cell = F.generator(G.ref(name))
        args = unit_diagram(F, cell, cell.dim)
        assert F.eval(Unit(cell.dim), args) == cell


def test_free_identity_cell_shape():
    G = two_globe_set()
    F = free_weak(G)
    x = F.generator(G.ref("x"))
    idx = F.identity(x, 2)
    assert idx.instr == sp(validate_scheme([0], [], 2))
    assert idx.diagram == unit_diagram(G, G.ref("x"), 2)


def test_free_whisker_identity_of_ess_inj_lemma():
    # id_1(y) *_0 u in the free category is the pair
    # (id_1(e_0) *_0 e_n, [u]) from the essential-injectivity argument
    G = two_globe_set()
    F = free_weak(G)
    u = F.generator(G.ref("w"))
    y = F.generator(G.ref("x"))
    left = F.compose(F.identity(y, 1), u, 0, 2)
    expected_instr = l1_compose(id_instr(0, 1), Unit(2), 0, 2)
    assert left.instr == expected_instr
    assert left.diagram == unit_diagram(G, G.ref("w"), 2)


def test_free_eval_commutes_with_boundary():
    G = two_globe_set()
    F = free_weak(G)
    u = F.generator(G.ref("u"))
    v = F.generator(G.ref("v"))
    w = F.generator(G.ref("w"))
    comp = F.compose(w, F.identity(v, 2), 1, 2)
    for lvl in (0, 1):
        for side in (SOURCE, TARGET):
            b = F.boundary(comp, lvl, side)
            assert b.instr == (comp.instr if False else b.instr)
            # boundary components stay mutually consistent
            assert arity(b.instr) == b.diagram.shape()


def test_free_compose_requires_matching_boundaries():
    G = two_globe_set()
    F = free_weak(G)
    u = F.generator(G.ref("u"))
    with pytest.raises(DimensionError):
        F.compose(u, u, 0, 1)


# -- hom views and whiskering --------------------------------------------------


def test_hom_of_two_category():
    T = strict_as_weak(two_squares_twocat())
    H = hom(T, T.ref("a"), T.ref("b"))
    assert {T.name_of(u) for u in H.cells(0)} == {"f", "g"}
    assert {T.name_of(u) for u in H.cells(1)} == {"1f", "1g", "al"}


def test_hom_identity_is_shifted():
    T = strict_as_weak(two_squares_twocat())
    H = hom(T, T.ref("a"), T.ref("b"))
    f = T.ref("f")
    assert H.identity(f, 1) == T.identity(f, 2)


def test_hom_compose_is_shifted():
    T = strict_as_weak(two_squares_twocat())
    H = hom(T, T.ref("a"), T.ref("b"))
    al = T.ref("al")
    one = H.compose(T.identity(T.ref("f"), 2), al, 0, 1)
    assert one == T.compose(T.identity(T.ref("f"), 2), al, 1, 2)


def test_hom_of_free_rejects_eval():
    G = two_globe_set()
    F = free_weak(G)
    H = hom(F, F.generator(G.ref("x")), F.generator(G.ref("y")))
    u = F.generator(G.ref("u"))
    with pytest.raises(UnsupportedEvalError):
        H.eval(Unit(0), unit_diagram(H, u, 0))
    # shifted identity still works
    assert H.identity(u, 1) == F.identity(u, 2)


def test_whisker_map_is_globular():
    T = strict_as_weak(two_squares_twocat())
    u = T.ref("f")
    m = whisker(T, u, T.ref("c"))
    assert m.is_globular(m.source.truncation + 1)
    al_h = m.apply(T.ref("be"))
    assert al_h == T.compose(u, T.ref("be"), 0, 2)


def test_whisker_right_side():
    T = strict_as_weak(two_squares_twocat())
    u = T.ref("h")
    m = whisker(T, u, T.ref("a"), side="right")
    assert m.apply(T.ref("al")) == T.compose(T.ref("al"), u, 0, 2)


# -- strict functors -----------------------------------------------------------


def test_identity_functor_validates():
    X = strict_as_weak(cat_table(diamond_poset()))
    f = identity_functor(X)
    assert f.check() == []


def test_functor_by_names_and_composition():
    A = strict_as_weak(cat_table(walking_arrow()))
    B = strict_as_weak(cat_table(chain_poset(3)))
    f = functor_by_names(
        A, B,
        [{"a": "p0", "b": "p1"}, {"1a": "1p0", "1b": "1p1", "a<b": "p0<p1"}],
    )
    g = functor_by_names(
        B, B,
        [
            {"p0": "p0", "p1": "p2", "p2": "p2"},
            {
                "1p0": "1p0", "1p1": "1p2", "1p2": "1p2",
                "p0<p1": "p0<p2", "p0<p2": "p0<p2", "p1<p2": "1p2",
            },
        ],
    )
    gf = f.then(g)
    assert gf.apply(A.ref("a<b")) == B.ref("p0<p2")


def test_functor_rejects_nonfunctorial_map():
    A = strict_as_weak(cat_table(walking_iso()))
    B = strict_as_weak(cat_table(walking_arrow()))
    with pytest.raises(TableError):
        functor_by_names(
            A, B,
            [
                {"c0": "a", "c1": "b"},
                {
                    "1c0": "1a", "1c1": "1b",
                    "c0~c1": "a<b", "c1~c0": "1b",  # breaks composition
                },
            ],
        )


def test_functor_preserves_formal_identities():
    X = strict_as_weak(cat_table(walking_iso()))
    f = identity_functor(X)
    u = X.identity(X.ref("c0~c1"), 3)
    assert f.apply(u) == u


def test_suspension_validates():
    assert validate_strict_table(suspension(cyclic_group_category(2))) == []
    assert validate_strict_table(suspension(walking_arrow())) == []


def test_materialized_tables_validate():
    assert validate_strict_table(materialize(cat_table(walking_iso()), 2)) == []
    assert validate_strict_table(materialize(cat_table(idempotent_monoid_category()), 3)) == []
