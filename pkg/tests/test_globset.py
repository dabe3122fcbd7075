import pytest

from omegacat.errors import DimensionError, OmegaError
from omegacat.globset import (
    SOURCE,
    TARGET,
    CellRef,
    GlobularSet,
    boundary,
    globe,
    globe_boundary,
    parallel,
)


def two_globe():
    # a 2-globe: f, g : a -> b and alpha : f => g
    return GlobularSet(
        [["a", "b"], ["f", "g"], ["alpha"]],
        [[0, 0], [0]],
        [[1, 1], [1]],
    )


def test_boundary_one_step():
    X = two_globe()
    alpha = X.ref("alpha")
    assert boundary(X, alpha, 1, SOURCE) == X.ref("f")
    assert boundary(X, alpha, 1, TARGET) == X.ref("g")


def test_boundary_identity_case():
    X = two_globe()
    for u in X.all_cells():
        assert boundary(X, u, u.dim, SOURCE) == u
        assert boundary(X, u, u.dim, TARGET) == u


def test_boundary_globularity_at_zero():
    X = two_globe()
    alpha = X.ref("alpha")
    via_src = boundary(X, boundary(X, alpha, 1, SOURCE), 0, SOURCE)
    via_tgt = boundary(X, boundary(X, alpha, 1, TARGET), 0, SOURCE)
    assert via_src == via_tgt == X.ref("a")


def test_boundary_level_too_high():
    X = two_globe()
    with pytest.raises(DimensionError):
        boundary(X, X.ref("f"), 2, SOURCE)


def test_parallel_zero_cells():
    X = two_globe()
    assert parallel(X, X.ref("a"), X.ref("b"))


def test_parallel_self():
    X = two_globe()
    for u in X.all_cells():
        assert parallel(X, u, u)


def test_parallel_composable_but_not_parallel():
    X = GlobularSet([["a", "b", "c"], ["f", "h"]], [[0, 1]], [[1, 2]])
    assert not parallel(X, X.ref("f"), X.ref("h"))


def test_parallel_dimension_mismatch():
    X = two_globe()
    with pytest.raises(DimensionError):
        parallel(X, X.ref("a"), X.ref("f"))


def test_parallel_is_equivalence_relation():
    X = GlobularSet(
        [["a", "b"], ["f", "g", "h"], ["al", "be"]],
        [[0, 0, 0], [0, 1]],
        [[1, 1, 1], [1, 2]],
    )
    for d in range(X.truncation + 1):
        refs = X.cell_refs(d)
        for u in refs:
            assert parallel(X, u, u)
            for v in refs:
                assert parallel(X, u, v) == parallel(X, v, u)
                for w in refs:
                    if parallel(X, u, v) and parallel(X, v, w):
                        assert parallel(X, u, w)


def test_globe_counts():
    assert [globe(0).n_cells(0)] == [1]
    g2 = globe(2)
    assert [g2.n_cells(d) for d in range(3)] == [2, 2, 1]


def test_globe_counts_against_path_enumeration():
    # Oracle: hom-sets G(m, n) as sigma/tau words modulo the coglobular
    # relations; a nonempty word's class is decided by its lowest letter.
    def hom_count(m, n):
        if m == n:
            return 1
        if m > n:
            return 0
        words = {()}
        for _ in range(m, n):
            words = {w + (x,) for w in words for x in "st"}

        def canon(w):
            return w[0]

        return len({canon(w) for w in words})

    for n in range(4):
        g = globe(n)
        for m in range(n + 2):
            assert g.n_cells(m) == hom_count(m, n)


def test_globe_boundary():
    assert globe_boundary(0).n_cells(0) == 0
    b3 = globe_boundary(3)
    assert [b3.n_cells(d) for d in range(3)] == [2, 2, 2]
    assert b3.truncation == 2


def test_validator_rejects_broken_globularity():
    with pytest.raises(OmegaError):
        GlobularSet(
            [["a", "b", "c"], ["f", "g"], ["alpha"]],
            [[0, 0], [0]],
            [[1, 2], [1]],  # f: a->b, g: a->c not parallel
        )


def test_validator_rejects_dangling_reference():
    with pytest.raises(OmegaError):
        GlobularSet([["a"], ["f"]], [[0]], [[1]])


def test_names_and_refs_roundtrip():
    X = two_globe()
    for u in X.all_cells():
        assert X.ref(X.name_of(u), u.dim) == u
