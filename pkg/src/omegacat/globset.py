"""Finite truncated globular sets: cells, boundaries, parallelism, globes.

Cells are addressed by :class:`CellRef` pairs ``(dim, index)``; names are
metadata kept for display and serialization only.  Everything is validated
up front and immutable afterwards, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, OmegaError

SOURCE = "source"
TARGET = "target"
SIDES = (SOURCE, TARGET)


@dataclass(frozen=True, order=True)
class CellRef:
    """A cell identified by (dimension, position within that dimension)."""

    dim: int
    index: int


class GlobularSet:
    """A globular set truncated at a finite level.

    ``cells[d]`` lists the names of the d-cells.  For d >= 1, ``src[d-1]``
    and ``tgt[d-1]`` give, for each d-cell, the index of its boundary
    (d-1)-cell.  Validation enforces totality and the globularity equations
    src(src u) = src(tgt u) and tgt(src u) = tgt(tgt u).
    """

    def __init__(self, cells, src, tgt):
        self.cells = tuple(tuple(names) for names in cells)
        self.src = tuple(tuple(m) for m in src)
        self.tgt = tuple(tuple(m) for m in tgt)
        self._validate()

    @property
    def truncation(self):
        return len(self.cells) - 1

    def _validate(self):
        if not self.cells:
            raise OmegaError("a globular set needs at least dimension 0")
        n = self.truncation
        if len(self.src) != n or len(self.tgt) != n:
            raise OmegaError(
                "src/tgt must cover dimensions 1..%d (got %d and %d tables)"
                % (n, len(self.src), len(self.tgt))
            )
        for names in self.cells:
            if len(set(names)) != len(names):
                raise OmegaError("duplicate cell name in %r" % (names,))
        for d in range(1, n + 1):
            lo, hi = len(self.cells[d - 1]), len(self.cells[d])
            for table in (self.src[d - 1], self.tgt[d - 1]):
                if len(table) != hi:
                    raise OmegaError("boundary table at dim %d is not total" % d)
                for j in table:
                    if not 0 <= j < lo:
                        raise OmegaError(
                            "boundary of a %d-cell points at missing index %r" % (d, j)
                        )
        for d in range(2, n + 1):
            for i in range(len(self.cells[d])):
                s, t = self.src[d - 1][i], self.tgt[d - 1][i]
                if self.src[d - 2][s] != self.src[d - 2][t] or self.tgt[d - 2][s] != self.tgt[d - 2][t]:
                    raise OmegaError(
                        "globularity fails at %d-cell %r" % (d, self.cells[d][i])
                    )

    # -- host protocol ----------------------------------------------------

    def dim(self, u: CellRef) -> int:
        return u.dim

    def boundary(self, u: CellRef, level: int, side: str) -> CellRef:
        return boundary(self, u, level, side)

    # -- accessors ---------------------------------------------------------

    def n_cells(self, d: int) -> int:
        return len(self.cells[d]) if 0 <= d <= self.truncation else 0

    def cell_refs(self, d: int):
        return [CellRef(d, i) for i in range(self.n_cells(d))]

    def all_cells(self):
        for d in range(self.truncation + 1):
            yield from self.cell_refs(d)

    def name_of(self, u: CellRef) -> str:
        return self.cells[u.dim][u.index]

    def ref(self, name: str, dim=None) -> CellRef:
        dims = range(self.truncation + 1) if dim is None else [dim]
        for d in dims:
            if name in self.cells[d]:
                return CellRef(d, self.cells[d].index(name))
        raise OmegaError("no cell named %r" % name)

    def __eq__(self, other):
        return (
            isinstance(other, GlobularSet)
            and self.cells == other.cells
            and self.src == other.src
            and self.tgt == other.tgt
        )

    def __hash__(self):
        return hash((self.cells, self.src, self.tgt))

    def __repr__(self):
        counts = ",".join(str(len(c)) for c in self.cells)
        return "GlobularSet(cells per dim: %s)" % counts


def boundary(X: GlobularSet, u: CellRef, level: int, side: str) -> CellRef:
    """Iterated source/target of ``u`` down to dimension ``level``."""
    if side not in SIDES:
        raise OmegaError("side must be %r or %r" % SIDES)
    if level > u.dim:
        raise DimensionError("boundary level %d exceeds dim %d" % (level, u.dim))
    table = X.src if side == SOURCE else X.tgt
    d, i = u.dim, u.index
    while d > level:
        i = table[d - 1][i]
        d -= 1
    return CellRef(d, i)


def parallel(X: GlobularSet, u: CellRef, v: CellRef) -> bool:
    """True iff ``u`` and ``v`` share sources and targets one level down."""
    if u.dim != v.dim:
        raise DimensionError("parallel needs equal dimensions (%d vs %d)" % (u.dim, v.dim))
    if u.dim == 0:
        return True
    d = u.dim - 1
    return (
        boundary(X, u, d, SOURCE) == boundary(X, v, d, SOURCE)
        and boundary(X, u, d, TARGET) == boundary(X, v, d, TARGET)
    )


def globe(n: int) -> GlobularSet:
    """The representable globular set G^n: two cells below dim n, one at n."""
    if n < 0:
        raise DimensionError("globe dimension must be >= 0")
    cells = [["s%d" % d, "t%d" % d] for d in range(n)] + [["top"]]
    src = []
    tgt = []
    for d in range(1, n + 1):
        width = 2 if d < n else 1
        src.append([0] * width)
        tgt.append([1] * width)
    return GlobularSet(cells, src, tgt)


def globe_boundary(n: int) -> GlobularSet:
    """The boundary of G^n; for n = 0 this is the empty globular set."""
    if n < 0:
        raise DimensionError("globe dimension must be >= 0")
    if n == 0:
        return GlobularSet([[]], [], [])
    g = globe(n)
    cells = [list(names) for names in g.cells[:n]]
    return GlobularSet(cells, [list(m) for m in g.src[: n - 1]], [list(m) for m in g.tgt[: n - 1]])
