"""Invertibility, the connectivity relation, and weak-equivalence verdicts.

Invertible cells of a finite realization are computed as the greatest
fixed point of the one-step "invertible up to S" operator, by deflationary
iteration from the set of all positive-dimensional cells.  At the
truncation dimension the witnesses must be on-the-nose identities, and
above it every formal identity is invertible; this is what makes the
coinductive definitions decidable at desk scale.

Essential n-surjectivity and n-injectivity are implemented in their
unfolded form, quantifying over parallel pairs and connecting cells
directly; no hom categories are materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CellMap, StrictFunctor, WeakCategory
from .errors import DimensionError, OmegaError
from .globset import SOURCE, TARGET

INCONSISTENT = "THEOREM VIOLATION"


def _cell_name(X, u):
    name_of = getattr(X, "name_of", None)
    if name_of is not None:
        try:
            return name_of(u)
        except Exception:
            pass
    return repr(u)


@dataclass
class InvertibleSet:
    """The greatest fixed point, with one chosen witness triple per member."""

    host: WeakCategory
    members: frozenset
    witnesses: dict = field(repr=False)

    def contains(self, u) -> bool:
        d = self.host.dim(u)
        if d == 0:
            return False
        if d > self.host.truncation:
            return True  # formal identities are invertible
        return u in self.members

    def members_at(self, d: int):
        return [u for u in self.host.cells(d) if u in self.members]


class _Search:
    """Shared per-category lookup tables for the fixed-point computation."""

    def __init__(self, X: WeakCategory):
        self.X = X
        self.N = X.truncation
        if self.N is None:
            raise OmegaError("invertibility needs a finite truncated realization")
        self.by_boundary = {}
        for d in range(1, self.N + 1):
            table = {}
            for u in X.cells(d):
                key = (X.boundary(u, d - 1, SOURCE), X.boundary(u, d - 1, TARGET))
                table.setdefault(key, []).append(u)
            self.by_boundary[d] = table

    def arrows(self, d, a, b):
        if d > self.N:
            return [self.X.identity(a, d)] if a == b else []
        return self.by_boundary[d].get((a, b), [])


def _witness(search: _Search, u, live):
    X, N = search.X, search.N
    d = X.dim(u)
    x = X.boundary(u, d - 1, SOURCE)
    y = X.boundary(u, d - 1, TARGET)
    idx = X.identity(x, d)
    idy = X.identity(y, d)
    for cand in search.arrows(d, y, x):
        uc = X.compose(u, cand, d - 1, d)
        cu = X.compose(cand, u, d - 1, d)
        p = q = None
        for p_cand in search.arrows(d + 1, uc, idx):
            if d + 1 > N or p_cand in live:
                p = p_cand
                break
        if p is None:
            continue
        for q_cand in search.arrows(d + 1, cu, idy):
            if d + 1 > N or q_cand in live:
                q = q_cand
                break
        if q is not None:
            return (cand, p, q)
    return None


def invertible_cells(X: WeakCategory) -> InvertibleSet:
    """Deflationary iteration of the invertibility operator to its gfp."""
    search = _Search(X)
    live = set()
    for d in range(1, search.N + 1):
        live.update(X.cells(d))
    while True:
        kept = {u for u in live if _witness(search, u, live) is not None}
        if kept == live:
            break
        live = kept
    witnesses = {}
    for d in range(1, search.N + 1):
        for u in X.cells(d):
            if u in live:
                witnesses[u] = _witness(search, u, live)
    return InvertibleSet(X, frozenset(live), witnesses)


class SimRelation:
    """Decides x ~ y (connected by an invertible cell) with O(1) queries."""

    def __init__(self, X: WeakCategory, inv: InvertibleSet = None):
        self.X = X
        self.inv = inv if inv is not None else invertible_cells(X)
        self.N = X.truncation
        self.pairs = {}
        for d in range(self.N):
            links = set()
            for p in self.inv.members_at(d + 1):
                links.add(
                    (self.X.boundary(p, d, SOURCE), self.X.boundary(p, d, TARGET))
                )
            self.pairs[d] = links

    def sim(self, x, y) -> bool:
        if self.X.dim(x) != self.X.dim(y):
            raise DimensionError("~ compares cells of equal dimension")
        if x == y:
            return True
        d = self.X.dim(x)
        if d >= self.N:
            return False  # connecting cells above here are identities
        return (x, y) in self.pairs[d]


def sim(X: WeakCategory, x, y, relation: SimRelation = None) -> bool:
    """x ~ y: some invertible cell one dimension up connects them."""
    relation = relation if relation is not None else SimRelation(X)
    return relation.sim(x, y)


# ---------------------------------------------------------------------------
# Essential surjectivity / injectivity, unfolded
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    trace: str = ""

    def __bool__(self):
        return self.ok


def _common_truncation(f: CellMap) -> int:
    NX, NY = f.source.truncation, f.target.truncation
    if NX is None or NY is None:
        raise OmegaError("essential surjectivity needs finite realizations")
    if NX != NY:
        raise OmegaError("source and target must share their truncation")
    return NX


def _surj_level(f: CellMap, k: int, sim_y: SimRelation) -> Verdict:
    X, Y = f.source, f.target
    N = _common_truncation(f)
    if k == 0:
        for y in Y.cells(0):
            if not any(sim_y.sim(f.apply(x), y) for x in X.cells(0)):
                return Verdict(False, "no object maps near %s" % _cell_name(Y, y))
        return Verdict(True)
    if k > N:
        for u in X.cells(N):
            for v in X.cells(N):
                if X.parallel(u, v) and f.apply(u) == f.apply(v) and u != v:
                    return Verdict(
                        False,
                        "cells %s and %s collapse at the truncation"
                        % (_cell_name(X, u), _cell_name(X, v)),
                    )
        return Verdict(True)
    lifts = {}
    for w in X.cells(k):
        key = (X.boundary(w, k - 1, SOURCE), X.boundary(w, k - 1, TARGET))
        lifts.setdefault(key, []).append(w)
    fills = {}
    for w in Y.cells(k):
        key = (Y.boundary(w, k - 1, SOURCE), Y.boundary(w, k - 1, TARGET))
        fills.setdefault(key, []).append(w)
    for u in X.cells(k - 1):
        for v in X.cells(k - 1):
            if not X.parallel(u, v):
                continue
            for w in fills.get((f.apply(u), f.apply(v)), []):
                if not any(
                    sim_y.sim(f.apply(bar), w) for bar in lifts.get((u, v), [])
                ):
                    return Verdict(
                        False,
                        "no cell %s -> %s lifts %s"
                        % (_cell_name(X, u), _cell_name(X, v), _cell_name(Y, w)),
                    )
    return Verdict(True)


def ess_n_surjective(f: CellMap, n: int, sim_y: SimRelation = None) -> Verdict:
    """Essential n-surjectivity of a globular map, checked exhaustively."""
    sim_y = sim_y if sim_y is not None else SimRelation(f.target)
    for k in range(n + 1):
        verdict = _surj_level(f, k, sim_y)
        if not verdict:
            return Verdict(False, "level %d: %s" % (k, verdict.trace))
    return Verdict(True)


def ess_n_injective(
    f: CellMap, n: int, sim_x: SimRelation = None, sim_y: SimRelation = None
) -> Verdict:
    """Essential n-injectivity: f u ~ f v forces u ~ v, levels 0..n."""
    N = _common_truncation(f)
    sim_x = sim_x if sim_x is not None else SimRelation(f.source)
    sim_y = sim_y if sim_y is not None else SimRelation(f.target)
    X = f.source
    for k in range(min(n, N) + 1):
        for u in X.cells(k):
            for v in X.cells(k):
                if not X.parallel(u, v):
                    continue
                if sim_y.sim(f.apply(u), f.apply(v)) and not sim_x.sim(u, v):
                    return Verdict(
                        False,
                        "level %d: %s and %s map together but are not connected"
                        % (k, _cell_name(X, u), _cell_name(X, v)),
                    )
    return Verdict(True)


def reflects_invertibles(
    f: CellMap, inv_x: InvertibleSet = None, inv_y: InvertibleSet = None
) -> bool:
    """Every cell with invertible image is itself invertible."""
    N = _common_truncation(f)
    inv_x = inv_x if inv_x is not None else invertible_cells(f.source)
    inv_y = inv_y if inv_y is not None else invertible_cells(f.target)
    for d in range(1, N + 1):
        for u in f.source.cells(d):
            if inv_y.contains(f.apply(u)) and not inv_x.contains(u):
                return False
    return True


def preserves_invertibles(
    f: CellMap, inv_x: InvertibleSet = None, inv_y: InvertibleSet = None
) -> bool:
    N = _common_truncation(f)
    inv_x = inv_x if inv_x is not None else invertible_cells(f.source)
    inv_y = inv_y if inv_y is not None else invertible_cells(f.target)
    for d in range(1, N + 1):
        for u in f.source.cells(d):
            if inv_x.contains(u) and not inv_y.contains(f.apply(u)):
                return False
    return True


# ---------------------------------------------------------------------------
# Weak-equivalence reports
# ---------------------------------------------------------------------------


@dataclass
class EquivReport:
    """Per-level verdicts for a strict functor between finite realizations.

    Levels run to truncation + 1; beyond that every verdict is stable
    because all cells are formal identities.
    """

    name: str
    truncation: int
    surjective: dict
    injective: dict
    reflects: bool
    verdict: bool
    traces: dict

    def to_json(self):
        return {
            "name": self.name,
            "truncation": self.truncation,
            "essentially_surjective": {str(k): v for k, v in sorted(self.surjective.items())},
            "essentially_injective": {str(k): v for k, v in sorted(self.injective.items())},
            "reflects_invertibles": self.reflects,
            "weak_equivalence": self.verdict,
            "traces": {str(k): v for k, v in sorted(self.traces.items())},
        }


def is_weak_equivalence(f: StrictFunctor) -> EquivReport:
    """Essential n-surjectivity for every n up to truncation + 1."""
    m = f.as_cell_map()
    N = _common_truncation(m)
    inv_x = invertible_cells(f.source)
    inv_y = invertible_cells(f.target)
    sim_x = SimRelation(f.source, inv_x)
    sim_y = SimRelation(f.target, inv_y)
    surj = {}
    inj = {}
    traces = {}
    ok_so_far = True
    for k in range(N + 2):
        verdict = _surj_level(m, k, sim_y)
        ok_so_far = ok_so_far and verdict.ok
        surj[k] = ok_so_far
        if not verdict and k not in traces:
            traces[k] = "level %d: %s" % (k, verdict.trace)
    for n in range(N + 2):
        inj[n] = ess_n_injective(m, n, sim_x, sim_y).ok
    return EquivReport(
        name=f.name or "f",
        truncation=N,
        surjective=surj,
        injective=inj,
        reflects=reflects_invertibles(m, inv_x, inv_y),
        verdict=surj[N + 1],
        traces=traces,
    )


@dataclass
class CompositionReport:
    reports: dict
    implications: list
    consistent: bool

    def to_json(self):
        return {
            "reports": {k: r.to_json() for k, r in sorted(self.reports.items())},
            "implications": list(self.implications),
            "consistent": self.consistent,
        }


def two_of_three(f: StrictFunctor, g: StrictFunctor) -> CompositionReport:
    """Check all three 2-out-of-3 implications on computed verdicts.

    A failed implication would contradict the theorem, so it is reported
    as an internal inconsistency, never as a property of the input.
    """
    gf = f.then(g)
    rf, rg, rgf = is_weak_equivalence(f), is_weak_equivalence(g), is_weak_equivalence(gf)
    checks = [
        ("A: f and g imply gf", (not (rf.verdict and rg.verdict)) or rgf.verdict),
        ("B: g and gf imply f", (not (rg.verdict and rgf.verdict)) or rf.verdict),
        ("C: f and gf imply g", (not (rf.verdict and rgf.verdict)) or rg.verdict),
    ]
    implications = [
        label if ok else "%s: %s" % (INCONSISTENT, label) for label, ok in checks
    ]
    return CompositionReport(
        {"f": rf, "g": rg, "gf": rgf},
        implications,
        all(ok for _, ok in checks),
    )


def two_of_six(f: StrictFunctor, g: StrictFunctor, h: StrictFunctor) -> CompositionReport:
    """If gf and hg are weak equivalences, all of f, g, h, hgf must be."""
    gf = f.then(g)
    hg = g.then(h)
    hgf = f.then(g).then(h)
    reports = {
        "f": is_weak_equivalence(f),
        "g": is_weak_equivalence(g),
        "h": is_weak_equivalence(h),
        "gf": is_weak_equivalence(gf),
        "hg": is_weak_equivalence(hg),
        "hgf": is_weak_equivalence(hgf),
    }
    premise = reports["gf"].verdict and reports["hg"].verdict
    implications = []
    consistent = True
    for name in ("f", "g", "h", "hgf"):
        ok = (not premise) or reports[name].verdict
        consistent = consistent and ok
        label = "gf and hg imply %s" % name
        implications.append(label if ok else "%s: %s" % (INCONSISTENT, label))
    return CompositionReport(reports, implications, consistent)
