import pytest

from omegacat.algebra import hom, identity_functor, strict_as_weak, whisker
from omegacat.equiv import (
    SimRelation,
    ess_n_injective,
    ess_n_surjective,
    invertible_cells,
    is_weak_equivalence,
    preserves_invertibles,
    reflects_invertibles,
    sim,
    two_of_six,
    two_of_three,
)
from omegacat.globset import CellRef
from omegacat.harness import (
    cat_table,
    chain_poset,
    cyclic_group_category,
    disjoint_union,
    functor_by_names,
    idempotent_monoid_category,
    indiscrete_category,
    materialize,
    parallel_pair_category,
    product_cat,
    two_squares_twocat,
    walking_arrow,
    walking_iso,
)


def iso_pair_cat():
    return strict_as_weak(cat_table(walking_iso()))


# -- invertibility fixed point -------------------------------------------------


def test_invertible_cells_walking_iso():
    X = iso_pair_cat()
    inv = invertible_cells(X)
    assert {X.name_of(u) for u in inv.members} == {"1c0", "1c1", "c0~c1", "c1~c0"}
    cand, p, q = inv.witnesses[X.ref("c0~c1")]
    assert cand == X.ref("c1~c0")


def test_invertible_cells_idempotent_monoid():
    X = strict_as_weak(cat_table(idempotent_monoid_category()))
    inv = invertible_cells(X)
    assert {X.name_of(u) for u in inv.members} == {"u"}
    assert not inv.contains(X.ref("e"))


def test_all_identities_are_members():
    for spec in (walking_arrow(), chain_poset(3), cyclic_group_category(4)):
        X = strict_as_weak(cat_table(spec))
        inv = invertible_cells(X)
        for obj in X.cells(0):
            assert inv.contains(X.identity(obj, 1))


def test_formal_identities_are_members():
    X = iso_pair_cat()
    inv = invertible_cells(X)
    assert inv.contains(CellRef(2, 0))
    assert inv.contains(X.identity(X.ref("c0~c1"), 4))


def test_members_are_postfixed():
    # removing one more layer changes nothing: members == Phi(members)
    X = strict_as_weak(cat_table(cyclic_group_category(3)))
    inv = invertible_cells(X)
    for u in inv.members:
        cand, p, q = inv.witnesses[u]
        d = X.dim(u)
        assert X.compose(u, cand, d - 1, d) == X.boundary(p, d, "source")
        assert inv.contains(p) and inv.contains(q)


def test_invertibles_in_two_category_dimension_two():
    T = strict_as_weak(two_squares_twocat())
    inv = invertible_cells(T)
    # al has no vertical inverse (the hom category is a walking arrow)
    assert not inv.contains(T.ref("al"))
    assert inv.contains(T.identity(T.ref("f"), 2))


def test_invertibility_transfers_to_hom():
    # a 2-cell is invertible iff it is invertible in its hom category
    T = strict_as_weak(two_squares_twocat())
    inv = invertible_cells(T)
    H = hom(T, T.ref("a"), T.ref("b"))
    hinv = invertible_cells(H)
    for u in H.cells(1):
        assert inv.contains(u) == hinv.contains(u)


# -- the connectivity relation ---------------------------------------------------


def test_sim_is_reflexive():
    X = iso_pair_cat()
    rel = SimRelation(X)
    for d in range(2):
        for u in X.cells(d):
            assert rel.sim(u, u)


def test_sim_on_objects_matches_isomorphism():
    X = strict_as_weak(cat_table(disjoint_union(walking_iso(), walking_arrow())))
    rel = SimRelation(X)
    c0, c1 = X.ref("L.c0"), X.ref("L.c1")
    a, b = X.ref("R.a"), X.ref("R.b")
    assert rel.sim(c0, c1) and rel.sim(c1, c0)
    assert not rel.sim(a, b)
    assert not rel.sim(c0, a)


def test_sim_at_truncation_is_equality():
    X = iso_pair_cat()
    rel = SimRelation(X)
    assert not rel.sim(X.ref("c0~c1"), X.ref("c1~c0"))


def test_sim_is_equivalence_relation():
    X = strict_as_weak(cat_table(indiscrete_category(3)))
    rel = SimRelation(X)
    objs = X.cells(0)
    for u in objs:
        for v in objs:
            assert rel.sim(u, v) == rel.sim(v, u)
            for w in objs:
                if rel.sim(u, v) and rel.sim(v, w):
                    assert rel.sim(u, w)


def test_invariance_of_members():
    # parallel, connected to a member => member
    X = strict_as_weak(cat_table(cyclic_group_category(2)))
    inv = invertible_cells(X)
    rel = SimRelation(X, inv)
    for d in (1,):
        for u in X.cells(d):
            for v in X.cells(d):
                if X.parallel(u, v) and rel.sim(u, v) and inv.contains(u):
                    assert inv.contains(v)


# -- essential surjectivity / injectivity ------------------------------------------


def test_identity_functor_is_weak_equivalence():
    X = strict_as_weak(cat_table(diamondish()))
    report = is_weak_equivalence(identity_functor(X))
    assert report.verdict
    assert all(report.surjective.values())
    assert all(report.injective.values())


def diamondish():
    return chain_poset(3)


def test_equivalence_by_projection():
    # projection from Y x indiscrete(2) onto Y is an equivalence
    base = walking_arrow()
    blown = product_cat(base, indiscrete_category(2))
    X = strict_as_weak(cat_table(blown))
    Y = strict_as_weak(cat_table(base))
    obj_map = {}
    arr_map = {}
    for name in X.glob.cells[0]:
        obj_map[name] = name[1:].split(",")[0]
    for name in X.glob.cells[1]:
        left = name[1:].split(",")[0]
        arr_map[name] = left
    f = functor_by_names(X, Y, [obj_map, arr_map], name="proj")
    report = is_weak_equivalence(f)
    assert report.verdict
    assert report.reflects


def test_non_essentially_surjective_inclusion():
    A = strict_as_weak(cat_table(chain_poset(1)))
    B = strict_as_weak(cat_table(walking_arrow()))
    f = functor_by_names(A, B, [{"p0": "a"}, {"1p0": "1a"}], name="incl")
    report = is_weak_equivalence(f)
    assert not report.verdict
    assert not report.surjective[0]
    assert "level 0" in report.traces[0]


def test_non_full_inclusion_fails_at_level_one():
    sub = poset_like_discrete()
    A = strict_as_weak(cat_table(sub))
    B = strict_as_weak(cat_table(walking_arrow()))
    f = functor_by_names(
        A, B, [{"o0": "a", "o1": "b"}, {"1o0": "1a", "1o1": "1b"}], name="wide"
    )
    m = f.as_cell_map()
    assert ess_n_surjective(m, 0)
    v = ess_n_surjective(m, 1)
    assert not v and "level 1" in v.trace
    report = is_weak_equivalence(f)
    assert report.surjective[0] and not report.surjective[1]


def poset_like_discrete():
    from omegacat.harness import discrete_category

    return discrete_category(2)


def test_non_faithful_collapse_fails_at_level_two():
    A = strict_as_weak(cat_table(parallel_pair_category()))
    B = strict_as_weak(cat_table(walking_arrow()))
    f = functor_by_names(
        A, B,
        [{"a": "a", "b": "b"}, {"1a": "1a", "1b": "1b", "u": "a<b", "v": "a<b"}],
        name="fold",
    )
    report = is_weak_equivalence(f)
    assert report.surjective[1]
    assert not report.surjective[2]
    assert not report.verdict


def test_folk_bullets_on_constructed_functors():
    # essentially surjective + full + faithful <=> weak equivalence
    X = strict_as_weak(cat_table(walking_iso()))
    Y = strict_as_weak(cat_table(chain_poset(1)))
    f = functor_by_names(
        X, Y,
        [{"c0": "p0", "c1": "p0"},
         {"1c0": "1p0", "1c1": "1p0", "c0~c1": "1p0", "c1~c0": "1p0"}],
        name="collapse",
    )
    report = is_weak_equivalence(f)
    assert report.verdict  # collapsing a contractible groupoid is an equivalence


def test_ess_injective_examples():
    X = strict_as_weak(cat_table(walking_iso()))
    Y = strict_as_weak(cat_table(chain_poset(1)))
    f = functor_by_names(
        X, Y,
        [{"c0": "p0", "c1": "p0"},
         {"1c0": "1p0", "1c1": "1p0", "c0~c1": "1p0", "c1~c0": "1p0"}],
    ).as_cell_map()
    assert ess_n_injective(f, 2)
    A = strict_as_weak(cat_table(discreteish()))
    B = strict_as_weak(cat_table(chain_poset(1)))
    g = functor_by_names(
        A, B, [{"o0": "p0", "o1": "p0"}, {"1o0": "1p0", "1o1": "1p0"}]
    ).as_cell_map()
    v = ess_n_injective(g, 0)
    assert not v  # two non-isomorphic objects collapse


def discreteish():
    from omegacat.harness import discrete_category

    return discrete_category(2)


def test_reflects_invertibles():
    A = strict_as_weak(cat_table(walking_arrow()))
    B = strict_as_weak(cat_table(walking_iso()))
    f = functor_by_names(
        A, B, [{"a": "c0", "b": "c1"}, {"1a": "1c0", "1b": "1c1", "a<b": "c0~c1"}],
        name="arrow-to-iso",
    )
    assert not reflects_invertibles(f.as_cell_map())
    assert reflects_invertibles(identity_functor(A).as_cell_map())
    assert preserves_invertibles(f.as_cell_map())


def test_weak_equivalences_reflect_invertibles():
    X = strict_as_weak(cat_table(walking_iso()))
    Y = strict_as_weak(cat_table(chain_poset(1)))
    f = functor_by_names(
        X, Y,
        [{"c0": "p0", "c1": "p0"},
         {"1c0": "1p0", "1c1": "1p0", "c0~c1": "1p0", "c1~c0": "1p0"}],
    )
    report = is_weak_equivalence(f)
    assert report.verdict and report.reflects


# -- whiskering maps ---------------------------------------------------------------


def test_whiskering_by_invertible_is_ess_surjective_and_injective():
    X = strict_as_weak(materialize(cat_table(walking_iso()), 2))
    u = X.ref("c0~c1")
    for z in X.cells(0):
        m = whisker(X, u, z)
        n = m.source.truncation + 1
        assert ess_n_surjective(m, n)
        assert ess_n_injective(m, n)


def test_whiskering_by_identity_is_ess_surjective():
    T = strict_as_weak(two_squares_twocat())
    y = T.ref("b")
    m = whisker(T, T.identity(y, 1), T.ref("c"))
    assert ess_n_surjective(m, m.source.truncation + 1)
    assert ess_n_injective(m, m.source.truncation + 1)


def test_converse_whiskering_detects_noninvertible():
    X = strict_as_weak(materialize(cat_table(walking_arrow()), 2))
    u = X.ref("a<b")
    inv = invertible_cells(X)
    assert not inv.contains(u)
    verdicts = []
    for z in X.cells(0):
        m = whisker(X, u, z)
        verdicts.append(bool(ess_n_surjective(m, m.source.truncation + 1)))
    assert not all(verdicts)


def test_whisker_naturality_with_functor():
    # applying a functor then whiskering by the image equals whiskering
    # then applying the functor
    T = strict_as_weak(two_squares_twocat())
    f = identity_functor(T)
    u = T.ref("f")
    z = T.ref("c")
    before = whisker(T, u, z)
    after = whisker(T, f.apply(u), z)
    for v in before.source.cells(1):
        assert f.apply(before.apply(v)) == after.apply(f.apply(v))


# -- 2-out-of-3 and friends -----------------------------------------------------


def collapse_iso_functor():
    X = strict_as_weak(cat_table(walking_iso()))
    Y = strict_as_weak(cat_table(chain_poset(1)))
    return functor_by_names(
        X, Y,
        [{"c0": "p0", "c1": "p0"},
         {"1c0": "1p0", "1c1": "1p0", "c0~c1": "1p0", "c1~c0": "1p0"}],
        name="collapse",
    )


def test_two_of_three_consistency_on_equivalences():
    f = collapse_iso_functor()
    g = identity_functor(f.target)
    report = two_of_three(f, g)
    assert report.consistent
    assert report.reports["f"].verdict and report.reports["gf"].verdict


def test_two_of_three_with_non_equivalence():
    A = strict_as_weak(cat_table(chain_poset(1)))
    B = strict_as_weak(cat_table(walking_arrow()))
    incl = functor_by_names(A, B, [{"p0": "a"}, {"1p0": "1a"}], name="incl")
    report = two_of_three(incl, identity_functor(B))
    assert report.consistent
    assert not report.reports["f"].verdict
    assert not report.reports["gf"].verdict


def test_two_of_six_on_equivalences():
    f = collapse_iso_functor()
    g = identity_functor(f.target)
    h = identity_functor(f.target)
    report = two_of_six(f, g, h)
    assert report.consistent
    assert report.reports["hgf"].verdict
