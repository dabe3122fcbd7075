"""Weak omega-categories as evaluation structures, and their realizations.

A weak category exposes a host interface (``dim``, ``boundary``) plus an
evaluation map ``eval(instruction, diagram)``.  Two realizations are
provided: free weak categories on a generating globular set, whose cells
are normalized (instruction, diagram) pairs, and finite strict category
tables viewed as weak via the arity map.  Strict tables are truncated:
cells above the truncation level are formal identities, which keeps the
coinductive notions in :mod:`omegacat.equiv` decidable.

Hom views shift a category's cells down one dimension between two fixed
objects; composition and identities in the hom are the shifted operations
of the parent.  Whiskering maps between hom views and strict functors are
packaged as :class:`CellMap` values for the equivalence checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DimensionError,
    OmegaError,
    TableError,
    UnsupportedEvalError,
)
from .globset import SOURCE, TARGET, CellRef, GlobularSet
from .instructions import (
    INSTR_HOST,
    Instruction,
    Unit,
    arity,
    comp_instr,
    compose_instr,
    id_instr,
    instr_boundary,
    normalize,
)
from .pasting import (
    HostOverDiagrams,
    PastingDiagram,
    _tree_table,
    degenerate,
    diagram_boundary,
    diagram_from_entries,
    flatten,
    fold_pasting,
    ltree_map,
    unit_diagram,
    validate_scheme,
)


class WeakCategory:
    """Base class: a host with an evaluation map and derived operations."""

    truncation = None
    arity_determined = False

    # host protocol ------------------------------------------------------
    def dim(self, cell) -> int:
        raise NotImplementedError

    def boundary(self, cell, level: int, side: str):
        raise NotImplementedError

    def eval(self, instr: Instruction, diagram: PastingDiagram):
        raise NotImplementedError

    def cells(self, d: int):
        raise UnsupportedEvalError("this realization does not enumerate cells")

    # derived operations ---------------------------------------------------
    def parallel(self, a, b) -> bool:
        if self.dim(a) != self.dim(b):
            raise DimensionError("parallel cells need equal dimensions")
        d = self.dim(a)
        if d == 0:
            return True
        return (
            self.boundary(a, d - 1, SOURCE) == self.boundary(b, d - 1, SOURCE)
            and self.boundary(a, d - 1, TARGET) == self.boundary(b, d - 1, TARGET)
        )

    def identity(self, x, n: int):
        """The identity n-cell on ``x`` (n strictly above dim x)."""
        m = self.dim(x)
        if not m < n:
            raise DimensionError("identity needs m < n, got m=%d n=%d" % (m, n))
        return self.eval(id_instr(m, n), unit_diagram(self, x, n))

    def compose(self, u, v, k: int, n: int):
        """Compose u and v along their shared k-boundary as an n-cell."""
        m1, m2 = self.dim(u), self.dim(v)
        if not (k < m1 <= n and k < m2 <= n):
            raise DimensionError(
                "composition needs k < dims <= n (k=%d, %d, %d, n=%d)" % (k, m1, m2, n)
            )
        if self.boundary(u, k, TARGET) != self.boundary(v, k, SOURCE):
            raise DimensionError("cells are not composable along level %d" % k)
        scheme = validate_scheme([m1, m2], [k], n)
        args = diagram_from_entries(self, scheme, [u, v])
        return self.eval(comp_instr(m1, m2, k, n), args)

    def pad_to(self, x, n: int):
        """Iterated identity raising ``x`` to dimension ``n``."""
        while self.dim(x) < n:
            x = self.identity(x, self.dim(x) + 1)
        return x

    def _fold_eval(self, diagram: PastingDiagram):
        """Evaluate a diagram by folding binary compositions (arity-determined
        realizations only)."""
        shape = diagram.shape()
        levels = [h for kind, h in _tree_table(shape.tree) if kind == "joint"]

        def glue_cells(u, k, v, n):
            m = max(self.dim(u), self.dim(v))
            return self.compose(u, v, k, m)

        out = fold_pasting(diagram.entries, levels, diagram.ambient, glue_cells, lambda c, n: c)
        return self.pad_to(out, diagram.ambient)


# ---------------------------------------------------------------------------
# Free weak categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeWeakCell:
    """A cell of a free weak category: instruction plus generating diagram."""

    instr: Instruction
    diagram: PastingDiagram

    @property
    def dim(self):
        return self.diagram.ambient


class FreeWeak(WeakCategory):
    """The free weak category on a generating globular set."""

    def __init__(self, base: GlobularSet):
        self.base = base
        self._tx_host = HostOverDiagrams(base)

    def generator(self, x: CellRef, n=None) -> FreeWeakCell:
        """The generating cell [x], optionally degenerated to dimension n."""
        n = x.dim if n is None else n
        cell = FreeWeakCell(Unit(x.dim), unit_diagram(self.base, x, x.dim))
        return self.pad_to(cell, n)

    def make_cell(self, instr: Instruction, diagram: PastingDiagram) -> FreeWeakCell:
        instr = normalize(instr)
        if arity(instr) != diagram.shape():
            raise DimensionError("instruction arity does not match diagram shape")
        return FreeWeakCell(instr, diagram)

    def dim(self, cell: FreeWeakCell) -> int:
        return cell.dim

    def boundary(self, cell: FreeWeakCell, level: int, side: str) -> FreeWeakCell:
        return FreeWeakCell(
            instr_boundary(cell.instr, level, side),
            diagram_boundary(cell.diagram, level, side),
        )

    def eval(self, instr: Instruction, diagram: PastingDiagram) -> FreeWeakCell:
        """Paste according to ``instr``.

        The diagram may be labelled either by cells of this category or by
        generating cells; a generator-labelled diagram is the image of the
        monad unit, so pasting it just forms the pair (instr, diagram).
        """
        if arity(instr) != diagram.shape():
            raise DimensionError("instruction arity does not match diagram shape")
        if not isinstance(diagram.ltree.labels[0], FreeWeakCell):
            return FreeWeakCell(normalize(instr), diagram)
        instrs = PastingDiagram(
            ltree_map(diagram.ltree, lambda c: c.instr), diagram.ambient, INSTR_HOST
        )
        diagrams = PastingDiagram(
            ltree_map(diagram.ltree, lambda c: c.diagram),
            diagram.ambient,
            self._tx_host,
        )
        return FreeWeakCell(compose_instr(instr, instrs), flatten(diagrams))

    def __repr__(self):
        return "FreeWeak(%r)" % (self.base,)


def free_weak(X: GlobularSet) -> FreeWeak:
    return FreeWeak(X)


# ---------------------------------------------------------------------------
# Strict category tables
# ---------------------------------------------------------------------------


@dataclass
class StrictCatTable:
    """A finite strict omega-category given by explicit tables.

    ``cells[d]`` are names; ``src``/``tgt`` as in :class:`GlobularSet`;
    ``ids[d][i]`` is the index of the identity (d+1)-cell on cell i of
    dimension d; ``comp[(k, d)]`` maps composable index pairs of d-cells
    to their composite along dimension k.
    """

    cells: list
    src: list
    tgt: list
    ids: list
    comp: dict

    def globular(self) -> GlobularSet:
        return GlobularSet(self.cells, self.src, self.tgt)


def validate_strict_table(table: StrictCatTable):
    """Exhaustively check the strict category axioms; returns violations."""
    problems = []
    try:
        X = table.globular()
    except OmegaError as err:
        return ["globular structure: %s" % err]
    N = X.truncation

    def name(d, i):
        return table.cells[d][i]

    def s(d, i):
        return table.src[d - 1][i]

    def t(d, i):
        return table.tgt[d - 1][i]

    def bnd(d, i, k, side):
        while d > k:
            i = (table.src if side == SOURCE else table.tgt)[d - 1][i]
            d -= 1
        return i

    if len(table.ids) != N:
        problems.append("expected %d identity tables, got %d" % (N, len(table.ids)))
        return problems
    for d in range(N):
        if len(table.ids[d]) != len(table.cells[d]):
            problems.append("identity table at dim %d is not total" % d)
            return problems
        for i, j in enumerate(table.ids[d]):
            if not 0 <= j < len(table.cells[d + 1]):
                problems.append("id of %s points at a missing cell" % name(d, i))
                return problems
            if s(d + 1, j) != i or t(d + 1, j) != i:
                problems.append("id of %s has wrong boundaries" % name(d, i))

    def idpad(d, i, target_dim):
        while d < target_dim:
            i = table.ids[d][i]
            d += 1
        return i

    expected = {(k, d) for d in range(1, N + 1) for k in range(d)}
    if set(table.comp) != expected:
        problems.append(
            "composition tables present for %r, expected %r"
            % (sorted(table.comp), sorted(expected))
        )
        return problems

    for (k, d), rule in sorted(table.comp.items()):
        pairs = {
            (i, j)
            for i in range(len(table.cells[d]))
            for j in range(len(table.cells[d]))
            if bnd(d, i, k, TARGET) == bnd(d, j, k, SOURCE)
        }
        if set(rule) != pairs:
            problems.append("comp table (%d,%d) domain mismatch" % (k, d))
            continue
        for (i, j), c in sorted(rule.items()):
            if not 0 <= c < len(table.cells[d]):
                problems.append("composite of (%s,%s) missing" % (name(d, i), name(d, j)))
                continue
            if k == d - 1:
                if s(d, c) != s(d, i) or t(d, c) != t(d, j):
                    problems.append(
                        "boundaries of %s *_%d %s are wrong" % (name(d, i), k, name(d, j))
                    )
            else:
                want_s = table.comp[(k, d - 1)][(s(d, i), s(d, j))]
                want_t = table.comp[(k, d - 1)][(t(d, i), t(d, j))]
                if s(d, c) != want_s or t(d, c) != want_t:
                    problems.append(
                        "boundaries of %s *_%d %s are wrong" % (name(d, i), k, name(d, j))
                    )

    # units
    for (k, d), rule in sorted(table.comp.items()):
        for i in range(len(table.cells[d])):
            left = idpad(k, bnd(d, i, k, SOURCE), d)
            right = idpad(k, bnd(d, i, k, TARGET), d)
            if rule[(left, i)] != i:
                problems.append("left unit law fails at %s along %d" % (name(d, i), k))
            if rule[(i, right)] != i:
                problems.append("right unit law fails at %s along %d" % (name(d, i), k))

    # associativity
    for (k, d), rule in sorted(table.comp.items()):
        for (i, j), c in sorted(rule.items()):
            for m in range(len(table.cells[d])):
                if (j, m) in rule:
                    if rule[(c, m)] != rule[(i, rule[(j, m)])]:
                        problems.append(
                            "associativity fails at (%s,%s,%s) along %d"
                            % (name(d, i), name(d, j), name(d, m), k)
                        )

    # identities are functorial
    for (k, d), rule in sorted(table.comp.items()):
        if d < N:
            for (i, j), c in sorted(rule.items()):
                lhs = table.ids[d][c]
                rhs = table.comp[(k, d + 1)][(table.ids[d][i], table.ids[d][j])]
                if lhs != rhs:
                    problems.append(
                        "id of %s *_%d %s is not the composite of ids"
                        % (name(d, i), k, name(d, j))
                    )

    # interchange
    for d in range(2, N + 1):
        for k in range(d):
            for j in range(k + 1, d):
                outer = table.comp[(k, d)]
                innerm = table.comp[(j, d)]
                for (a, b), ab in sorted(innerm.items()):
                    for (c, e), ce in sorted(innerm.items()):
                        if (ab, ce) in outer and (a, c) in outer and (b, e) in outer:
                            if outer[(ab, ce)] != innerm[(outer[(a, c)], outer[(b, e)])]:
                                problems.append(
                                    "interchange fails along (%d,%d) at dim %d" % (k, j, d)
                                )
    return problems


class StrictWeak(WeakCategory):
    """A validated strict table viewed as a weak category.

    Cells are :class:`CellRef` values; dimensions above the truncation
    refer to formal identities of the top-dimensional cells.
    """

    arity_determined = True

    def __init__(self, table: StrictCatTable):
        problems = validate_strict_table(table)
        if problems:
            raise TableError("invalid strict table: %s" % "; ".join(problems[:3]))
        self.table = table
        self.glob = table.globular()
        self.truncation = self.glob.truncation

    # host protocol --------------------------------------------------------
    def dim(self, u: CellRef) -> int:
        return u.dim

    def boundary(self, u: CellRef, level: int, side: str) -> CellRef:
        if level > u.dim:
            raise DimensionError("boundary level above cell dimension")
        N = self.truncation
        d, i = u.dim, u.index
        if d > N:
            d = max(level, N)
        if d > level:
            i = self.glob.boundary(CellRef(d, i), level, side).index
            d = level
        return CellRef(d, i)

    def cells(self, d: int):
        if d <= self.truncation:
            return self.glob.cell_refs(d)
        return [CellRef(d, i) for i in range(self.glob.n_cells(self.truncation))]

    def name_of(self, u: CellRef) -> str:
        if u.dim <= self.truncation:
            return self.glob.name_of(u)
        base = self.glob.name_of(CellRef(self.truncation, u.index))
        return "id^%d(%s)" % (u.dim, base)

    def ref(self, name, dim=None) -> CellRef:
        return self.glob.ref(name, dim)

    # strict operations ------------------------------------------------------
    def id_of(self, u: CellRef) -> CellRef:
        if u.dim >= self.truncation:
            return CellRef(u.dim + 1, u.index)
        return CellRef(u.dim + 1, self.table.ids[u.dim][u.index])

    def identity(self, x, n: int):
        if not self.dim(x) < n:
            raise DimensionError("identity needs m < n")
        return self.pad_to(x, n)

    def pad_to(self, x: CellRef, n: int) -> CellRef:
        while x.dim < n:
            x = self.id_of(x)
        return x

    def comp_cells(self, u: CellRef, v: CellRef, k: int) -> CellRef:
        d = max(u.dim, v.dim)
        u, v = self.pad_to(u, d), self.pad_to(v, d)
        if self.boundary(u, k, TARGET) != self.boundary(v, k, SOURCE):
            raise DimensionError("cells are not composable along level %d" % k)
        N = self.truncation
        if d <= N:
            return CellRef(d, self.table.comp[(k, d)][(u.index, v.index)])
        if k >= N:
            return u  # identities above the truncation absorb
        base = self.comp_cells(CellRef(N, u.index), CellRef(N, v.index), k)
        return CellRef(d, base.index)

    def compose(self, u, v, k: int, n: int):
        m1, m2 = self.dim(u), self.dim(v)
        if not (k < m1 <= n and k < m2 <= n):
            raise DimensionError("composition needs k < dims <= n")
        return self.pad_to(self.comp_cells(u, v, k), n)

    def eval(self, instr: Instruction, diagram: PastingDiagram) -> CellRef:
        if arity(instr) != diagram.shape():
            raise DimensionError("instruction arity does not match diagram shape")
        return self._fold_eval(diagram)

    def __repr__(self):
        counts = ",".join(str(len(c)) for c in self.table.cells)
        return "StrictWeak(cells per dim: %s)" % counts


def strict_as_weak(table: StrictCatTable) -> StrictWeak:
    return StrictWeak(table)


# ---------------------------------------------------------------------------
# Hom views and whiskering
# ---------------------------------------------------------------------------


class HomView(WeakCategory):
    """The hom weak category X(x, y), cells shifted down one dimension."""

    def __init__(self, parent: WeakCategory, x, y):
        if parent.dim(x) != 0 or parent.dim(y) != 0:
            raise DimensionError("hom is taken between 0-cells")
        self.parent = parent
        self.x = x
        self.y = y
        self.arity_determined = parent.arity_determined
        if parent.truncation is not None:
            self.truncation = max(parent.truncation - 1, 0)

    def dim(self, u) -> int:
        return self.parent.dim(u) - 1

    def boundary(self, u, level: int, side: str):
        return self.parent.boundary(u, level + 1, side)

    def cells(self, d: int):
        return [
            u
            for u in self.parent.cells(d + 1)
            if self.parent.boundary(u, 0, SOURCE) == self.x
            and self.parent.boundary(u, 0, TARGET) == self.y
        ]

    def identity(self, z, n: int):
        if not self.dim(z) < n:
            raise DimensionError("identity needs m < n")
        return self.parent.identity(z, n + 1)

    def compose(self, u, v, k: int, n: int):
        m1, m2 = self.dim(u), self.dim(v)
        if not (k < m1 <= n and k < m2 <= n):
            raise DimensionError("composition needs k < dims <= n")
        return self.parent.compose(u, v, k + 1, n + 1)

    def pad_to(self, z, n: int):
        return self.parent.pad_to(z, n + 1)

    def eval(self, instr: Instruction, diagram: PastingDiagram):
        if not self.arity_determined:
            raise UnsupportedEvalError(
                "hom of a free realization only supports identity and compose"
            )
        if arity(instr) != diagram.shape():
            raise DimensionError("instruction arity does not match diagram shape")
        return self._fold_eval(diagram)

    def name_of(self, u):
        return self.parent.name_of(u)

    def __repr__(self):
        return "HomView(%r, %r, %r)" % (self.parent, self.x, self.y)


def hom(X: WeakCategory, x, y) -> HomView:
    return HomView(X, x, y)


@dataclass
class CellMap:
    """A globular map between weak categories, given by a cell function."""

    source: WeakCategory
    target: WeakCategory
    fn: object
    name: str = ""

    def apply(self, u):
        return self.fn(u)

    def is_globular(self, up_to: int) -> bool:
        for d in range(up_to + 1):
            for u in self.source.cells(d):
                fu = self.apply(u)
                if self.target.dim(fu) != d:
                    return False
                for lvl in range(d):
                    for side in (SOURCE, TARGET):
                        if self.apply(self.source.boundary(u, lvl, side)) != \
                                self.target.boundary(fu, lvl, side):
                            return False
        return True

    def then(self, other: "CellMap") -> "CellMap":
        return CellMap(
            self.source,
            other.target,
            lambda u: other.apply(self.apply(u)),
            name="%s;%s" % (self.name, other.name),
        )


LEFT = "left"
RIGHT = "right"


def whisker(X: WeakCategory, u, z, side: str = LEFT) -> CellMap:
    """Whiskering by the 1-cell ``u``: a globular map between hom views.

    Left whiskering sends each cell v of X(t_0 u, z) to u *_0 v; right
    whiskering sends each cell v of X(z, s_0 u) to v *_0 u.
    """
    if X.dim(u) != 1:
        raise DimensionError("whiskering is by a 1-cell")
    x0 = X.boundary(u, 0, SOURCE)
    y0 = X.boundary(u, 0, TARGET)
    if side == LEFT:
        dom, cod = HomView(X, y0, z), HomView(X, x0, z)
        fn = lambda v: X.compose(u, v, 0, X.dim(v))
        label = "%s*_0(-)" % (u,)
    elif side == RIGHT:
        dom, cod = HomView(X, z, x0), HomView(X, z, y0)
        fn = lambda v: X.compose(v, u, 0, X.dim(v))
        label = "(-)*_0%s" % (u,)
    else:
        raise OmegaError("side must be %r or %r" % (LEFT, RIGHT))
    return CellMap(dom, cod, fn, name=label)


# ---------------------------------------------------------------------------
# Strict functors
# ---------------------------------------------------------------------------


@dataclass
class StrictFunctor:
    """A strict functor between strict tables, as dimension-wise index maps."""

    source: StrictWeak
    target: StrictWeak
    maps: list
    name: str = field(default="", compare=False)

    def __post_init__(self):
        problems = self.check()
        if problems:
            raise TableError("invalid functor: %s" % "; ".join(problems[:3]))

    def check(self):
        problems = []
        S, T = self.source, self.target
        if S.truncation != T.truncation:
            return ["source and target truncations differ"]
        N = S.truncation
        if len(self.maps) != N + 1:
            return ["expected %d dimension maps" % (N + 1)]
        for d in range(N + 1):
            if len(self.maps[d]) != S.glob.n_cells(d):
                problems.append("map at dim %d is not total" % d)
                return problems
            for i in self.maps[d]:
                if not 0 <= i < T.glob.n_cells(d):
                    problems.append("map at dim %d hits a missing cell" % d)
                    return problems
        for d in range(1, N + 1):
            for i in range(S.glob.n_cells(d)):
                for tables in ("src", "tgt"):
                    sb = getattr(S.table, tables)[d - 1][i]
                    tb = getattr(T.table, tables)[d - 1][self.maps[d][i]]
                    if self.maps[d - 1][sb] != tb:
                        problems.append("boundary not preserved at dim %d" % d)
        if problems:
            return problems
        for d in range(N):
            for i in range(S.glob.n_cells(d)):
                if self.maps[d + 1][S.table.ids[d][i]] != T.table.ids[d][self.maps[d][i]]:
                    problems.append("identity not preserved at dim %d" % d)
        for (k, d), rule in sorted(S.table.comp.items()):
            for (i, j), c in sorted(rule.items()):
                fi, fj = self.maps[d][i], self.maps[d][j]
                if T.table.comp[(k, d)].get((fi, fj)) != self.maps[d][c]:
                    problems.append("composition not preserved along (%d,%d)" % (k, d))
        return problems

    def apply(self, u: CellRef) -> CellRef:
        N = self.source.truncation
        if u.dim > N:
            return CellRef(u.dim, self.maps[N][u.index])
        return CellRef(u.dim, self.maps[u.dim][u.index])

    def as_cell_map(self) -> CellMap:
        return CellMap(self.source, self.target, self.apply, name=self.name or "f")

    def then(self, other: "StrictFunctor") -> "StrictFunctor":
        if self.target is not other.source and self.target.table != other.source.table:
            raise TableError("functors are not composable")
        maps = [
            [other.maps[d][i] for i in self.maps[d]] for d in range(len(self.maps))
        ]
        return StrictFunctor(
            self.source, other.target, maps,
            name="%s;%s" % (self.name or "f", other.name or "g"),
        )


def identity_functor(X: StrictWeak) -> StrictFunctor:
    return StrictFunctor(
        X, X, [list(range(X.glob.n_cells(d))) for d in range(X.truncation + 1)],
        name="1",
    )
