"""Pasting schemes and pasting diagrams with a canonical planar-tree form.

A pasting scheme is a table ``[k_0 .. k_r / k_1 .. k_r]@n`` subject to
``k_{i-1} > k_i < k_i`` column constraints; internally it is stored as an
ordered rooted planar tree of height <= n.  The table's outer entries are
the tree's leaf heights in left-to-right order and the inner entries are
the heights of the meets of consecutive leaves.

A pasting diagram is the same tree carrying labels: a node at height d
with c children carries c + 1 cells of dimension d (the "fenceposts"),
and every label of the j-th child must run from fencepost j-1 to
fencepost j one level up.  Boundaries are tree truncations, gluing along
dimension k is zip-concatenation of children at the height-k nodes, and
the monad multiplication (``flatten``) is a fold of gluings grouped by
minimal joint dimension.

Labels are opaque; a diagram carries a ``host`` exposing ``dim(cell)``
and ``boundary(cell, level, side)``.  The same machinery therefore serves
diagrams over a globular set, over instructions, over other diagrams, and
over weak-category cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce

from .errors import DiagramError, DimensionError, SchemeError
from .globset import SIDES, SOURCE, TARGET

# ---------------------------------------------------------------------------
# Plain planar trees (nested tuples); () is a leaf.
# ---------------------------------------------------------------------------


def tree_height(t) -> int:
    return 0 if not t else 1 + max(tree_height(c) for c in t)


def tree_truncate(t, level: int):
    if level == 0:
        return ()
    return tuple(tree_truncate(c, level - 1) for c in t)


def tree_from_lists(t):
    return tuple(tree_from_lists(c) for c in t)


def tree_to_lists(t):
    return [tree_to_lists(c) for c in t]


def chain_tree(height: int):
    t = ()
    for _ in range(height):
        t = (t,)
    return t


def _tree_table(t, h=0):
    """Yield ('leaf', height) and ('joint', height) markers in table order."""
    if not t:
        yield ("leaf", h)
        return
    for j, child in enumerate(t):
        if j:
            yield ("joint", h)
        yield from _tree_table(child, h + 1)


def _tree_from_table(outer, inner, h):
    if len(outer) == 1 and outer[0] == h:
        return ()
    children = []
    start = 0
    for pos in [i for i, lv in enumerate(inner) if lv == h] + [len(inner)]:
        children.append(
            _tree_from_table(outer[start : pos + 1], inner[start:pos], h + 1)
        )
        start = pos + 1
    return tuple(children)


def tree_glue(u, v, k: int):
    """Zip-concatenate two trees whose k-truncations agree."""
    if k == 0:
        return u + v
    return tuple(tree_glue(cu, cv, k - 1) for cu, cv in zip(u, v))


# ---------------------------------------------------------------------------
# Pasting schemes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PastingScheme:
    """A pasting scheme: planar tree plus an explicit ambient dimension."""

    tree: tuple
    ambient: int

    def __post_init__(self):
        if self.ambient < 0:
            raise SchemeError("ambient dimension must be >= 0")
        if tree_height(self.tree) > self.ambient:
            raise SchemeError(
                "tree height %d exceeds ambient dimension %d"
                % (tree_height(self.tree), self.ambient)
            )

    @cached_property
    def table(self):
        outer, inner = [], []
        for kind, h in _tree_table(self.tree):
            (outer if kind == "leaf" else inner).append(h)
        return tuple(outer), tuple(inner)

    @property
    def outer(self):
        return self.table[0]

    @property
    def inner(self):
        return self.table[1]

    @property
    def dim(self):
        return self.ambient

    def is_globe(self) -> bool:
        """True for [n]@n, the image of the monad unit."""
        return self.tree == chain_tree(self.ambient)

    def __repr__(self):
        return "PastingScheme(%s)" % format_scheme(self)


def format_scheme(k: PastingScheme) -> str:
    outer, inner = k.table
    text = " ".join(str(x) for x in outer)
    if inner:
        text += " / " + " ".join(str(x) for x in inner)
    return "[%s]@%d" % (text, k.ambient)


def validate_scheme(outer, inner, ambient: int) -> PastingScheme:
    """Check the table constraints and return the validated scheme."""
    outer = list(outer)
    inner = list(inner)
    if not outer:
        raise SchemeError("a scheme needs at least one outer entry", index=0)
    if len(inner) != len(outer) - 1:
        raise SchemeError(
            "expected %d inner entries, got %d" % (len(outer) - 1, len(inner))
        )
    for i, k in enumerate(outer):
        if k < 0 or k > ambient:
            raise SchemeError(
                "outer entry %d at column %d is outside 0..%d" % (k, i, ambient),
                index=i,
            )
    for i in range(1, len(outer)):
        lo = inner[i - 1]
        if not (outer[i - 1] > lo and lo < outer[i]):
            raise SchemeError(
                "constraint k_%d > inner_%d < k_%d fails (%d, %d, %d)"
                % (i - 1, i, i, outer[i - 1], lo, outer[i]),
                index=i,
            )
    return PastingScheme(_tree_from_table(outer, inner, 0), ambient)


def scheme_to_tree(k: PastingScheme):
    """Planar-tree view, as nested lists (JSON friendly)."""
    return tree_to_lists(k.tree)


def tree_to_scheme(t, ambient: int) -> PastingScheme:
    """Inverse of :func:`scheme_to_tree`; rejects trees taller than ambient."""
    return PastingScheme(tree_from_lists(t), ambient)


def scheme_boundary(k: PastingScheme, level: int, side: str = SOURCE) -> PastingScheme:
    """Truncate to ``level``.  Source and target of a scheme coincide."""
    if side not in SIDES:
        raise SchemeError("side must be one of %r" % (SIDES,))
    if level >= k.ambient:
        raise DimensionError(
            "boundary level %d must be below ambient %d" % (level, k.ambient)
        )
    return PastingScheme(tree_truncate(k.tree, level), level)


def degenerate_scheme(k: PastingScheme, n: int) -> PastingScheme:
    if n < k.ambient:
        raise DimensionError(
            "cannot degenerate ambient %d down to %d" % (k.ambient, n)
        )
    return PastingScheme(k.tree, n)


def glue_schemes(u: PastingScheme, k: int, v: PastingScheme, n: int) -> PastingScheme:
    if not (k < u.ambient and k < v.ambient):
        raise DimensionError("gluing level %d must be below both ambients" % k)
    if max(u.ambient, v.ambient) > n:
        raise DimensionError("result ambient %d too small" % n)
    if tree_truncate(u.tree, k) != tree_truncate(v.tree, k):
        raise SchemeError("schemes do not share their %d-boundary" % k)
    return PastingScheme(tree_glue(u.tree, v.tree, k), n)


def globe_scheme(m: int, n=None) -> PastingScheme:
    """The scheme [m]@n (defaults to [m]@m)."""
    return PastingScheme(chain_tree(m), m if n is None else n)


# ---------------------------------------------------------------------------
# Labelled trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LTree:
    """A planar tree whose height-d nodes carry (children + 1) d-cells."""

    labels: tuple
    children: tuple = ()

    def __post_init__(self):
        if len(self.labels) != len(self.children) + 1:
            raise DiagramError(
                "a node with %d children needs %d labels, got %d"
                % (len(self.children), len(self.children) + 1, len(self.labels))
            )


def ltree_tree(lt: LTree):
    return tuple(ltree_tree(c) for c in lt.children)


def ltree_truncate(lt: LTree, level: int, side: str) -> LTree:
    if level == 0:
        return LTree((lt.labels[0 if side == SOURCE else -1],))
    return LTree(lt.labels, tuple(ltree_truncate(c, level - 1, side) for c in lt.children))


def ltree_glue(u: LTree, v: LTree, k: int) -> LTree:
    if k == 0:
        return LTree(u.labels + v.labels[1:], u.children + v.children)
    return LTree(u.labels, tuple(ltree_glue(cu, cv, k - 1) for cu, cv in zip(u.children, v.children)))


def ltree_map(lt: LTree, fn) -> LTree:
    return LTree(tuple(fn(x) for x in lt.labels), tuple(ltree_map(c, fn) for c in lt.children))


def ltree_nodes(lt: LTree, h=0, path=()):
    """Yield (path, height, node) over the whole tree, root first."""
    yield path, h, lt
    for j, c in enumerate(lt.children):
        yield from ltree_nodes(c, h + 1, path + (j,))


def ltree_leaves(lt: LTree):
    """Leaf labels in left-to-right table order, with their heights."""
    for _, h, node in ltree_nodes(lt):
        if not node.children:
            yield node.labels[0], h


def _first_leaf(lt: LTree):
    return lt.labels[0] if not lt.children else _first_leaf(lt.children[0])


def _last_leaf(lt: LTree):
    return lt.labels[-1] if not lt.children else _last_leaf(lt.children[-1])


def ltree_from_leaves(tree, leaf_labels, boundary_fn, h=0):
    """Rebuild an LTree from a plain tree and its leaf labels.

    Fenceposts are derived from the leaves: label j of an inner node at
    height d is the d-target of the rightmost leaf below child j (the
    d-source of the leftmost leaf for j = 0).
    """
    if not tree:
        return LTree((next(leaf_labels),))
    children = tuple(ltree_from_leaves(c, leaf_labels, boundary_fn, h + 1) for c in tree)
    labels = [boundary_fn(_first_leaf(children[0]), h, SOURCE)]
    labels.extend(boundary_fn(_last_leaf(c), h, TARGET) for c in children)
    return LTree(tuple(labels), children)


def ltree_split(t: LTree, left_tree, k: int):
    """Undo one gluing along k, given the plain tree of the left factor."""
    if k == 0:
        c = len(left_tree)
        left = LTree(t.labels[: c + 1], t.children[:c])
        right = LTree(t.labels[c:], t.children[c:])
        return left, right
    pairs = [
        ltree_split(child, left_child, k - 1)
        for child, left_child in zip(t.children, left_tree)
    ]
    left = LTree(t.labels, tuple(p[0] for p in pairs))
    right = LTree(t.labels, tuple(p[1] for p in pairs))
    return left, right


# ---------------------------------------------------------------------------
# Pasting diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PastingDiagram:
    """A labelled pasting tree with an explicit ambient dimension.

    Equality ignores the host: two diagrams are equal when their labelled
    trees and ambient dimensions agree.
    """

    ltree: LTree
    ambient: int
    host: object = field(compare=False, repr=False)

    @property
    def dim(self):
        return self.ambient

    def shape(self) -> PastingScheme:
        return PastingScheme(ltree_tree(self.ltree), self.ambient)

    @property
    def entries(self):
        return tuple(label for label, _ in ltree_leaves(self.ltree))

    @property
    def joints(self):
        joints = []

        def walk(node):
            for j, child in enumerate(node.children):
                if j:
                    joints.append(node.labels[j])
                walk(child)

        walk(self.ltree)
        return tuple(joints)

    def __repr__(self):
        return "PastingDiagram(%s; %d entries)" % (
            format_scheme(self.shape()),
            len(self.entries),
        )


def _check_ltree(host, lt: LTree, h=0, path=()):
    for j, label in enumerate(lt.labels):
        if host.dim(label) != h:
            raise DiagramError(
                "label %r at height %d has dimension %d"
                % (label, h, host.dim(label)),
                position=path + (j,),
            )
    for j, child in enumerate(lt.children):
        for m, b in enumerate(child.labels):
            if host.boundary(b, h, SOURCE) != lt.labels[j]:
                raise DiagramError(
                    "label %r under branch %d has the wrong %d-source" % (b, j, h),
                    position=path + (j, m),
                )
            if host.boundary(b, h, TARGET) != lt.labels[j + 1]:
                raise DiagramError(
                    "label %r under branch %d has the wrong %d-target" % (b, j, h),
                    position=path + (j, m),
                )
        _check_ltree(host, child, h + 1, path + (j,))


def diagram_from_ltree(host, lt: LTree, ambient: int) -> PastingDiagram:
    d = PastingDiagram(lt, ambient, host)
    d.shape()  # height check
    _check_ltree(host, lt)
    return d


def diagram_from_entries(host, scheme: PastingScheme, entries) -> PastingDiagram:
    """Build a diagram from its outer entries; fenceposts are derived."""
    outer = scheme.outer
    entries = list(entries)
    if len(entries) != len(outer):
        raise DiagramError(
            "expected %d entries, got %d" % (len(outer), len(entries))
        )
    for i, (label, want) in enumerate(zip(entries, outer)):
        if host.dim(label) != want:
            raise DiagramError(
                "entry %d has dimension %d, scheme wants %d"
                % (i, host.dim(label), want),
                position=(i,),
            )
    lt = ltree_from_leaves(scheme.tree, iter(entries), host.boundary)
    return diagram_from_ltree(host, lt, scheme.ambient)


def validate_diagram(host, scheme: PastingScheme, entries, joints) -> PastingDiagram:
    """Check a full table (entries and joints) against the scheme."""
    d = diagram_from_entries(host, scheme, entries)
    derived = d.joints
    joints = tuple(joints)
    if len(joints) != len(derived):
        raise DiagramError(
            "expected %d joints, got %d" % (len(derived), len(joints))
        )
    for i, (given, want) in enumerate(zip(joints, derived), start=1):
        if given != want:
            raise DiagramError(
                "joint %d should be %r, got %r" % (i, want, given), position=(i,)
            )
    return d


def unit_diagram(host, x, n: int) -> PastingDiagram:
    """The one-entry diagram [x] regarded as n-dimensional."""
    m = host.dim(x)
    if m > n:
        raise DimensionError("cell of dimension %d does not fit ambient %d" % (m, n))
    lt = LTree((x,))
    for d in range(m - 1, -1, -1):
        lt = LTree(
            (host.boundary(x, d, SOURCE), host.boundary(x, d, TARGET)), (lt,)
        )
    return PastingDiagram(lt, n, host)


def degenerate(u: PastingDiagram, n: int) -> PastingDiagram:
    """Regard ``u`` as an n-dimensional diagram (its formal identity)."""
    if n < u.ambient:
        raise DimensionError(
            "cannot degenerate ambient %d down to %d" % (u.ambient, n)
        )
    return PastingDiagram(u.ltree, n, u.host)


def diagram_boundary(u: PastingDiagram, level: int, side: str) -> PastingDiagram:
    if side not in SIDES:
        raise DiagramError("side must be one of %r" % (SIDES,))
    if level >= u.ambient:
        raise DimensionError(
            "boundary level %d must be below ambient %d" % (level, u.ambient)
        )
    return PastingDiagram(ltree_truncate(u.ltree, level, side), level, u.host)


def parallel_diagrams(u: PastingDiagram, v: PastingDiagram) -> bool:
    if u.ambient != v.ambient:
        raise DimensionError("parallel diagrams need equal ambient dimensions")
    if u.ambient == 0:
        return True
    lvl = u.ambient - 1
    return (
        diagram_boundary(u, lvl, SOURCE) == diagram_boundary(v, lvl, SOURCE)
        and diagram_boundary(u, lvl, TARGET) == diagram_boundary(v, lvl, TARGET)
    )


def _first_mismatch(a: LTree, b: LTree, path=()):
    if a.labels != b.labels:
        for j, (x, y) in enumerate(zip(a.labels, b.labels)):
            if x != y:
                return path + (j,), x, y
        return path, a.labels, b.labels
    for j, (ca, cb) in enumerate(zip(a.children, b.children)):
        hit = _first_mismatch(ca, cb, path + (j,))
        if hit is not None:
            return hit
    return None


def glue(u: PastingDiagram, k: int, v: PastingDiagram, n: int) -> PastingDiagram:
    """Compose u then v along their shared k-boundary, ambient n.

    Requires k strictly below both ambient dimensions; degenerate first to
    compose with a lower-dimensional diagram.
    """
    if not (k < u.ambient and k < v.ambient):
        raise DimensionError("gluing level %d must be below both ambients" % k)
    if max(u.ambient, v.ambient) > n:
        raise DimensionError("result ambient %d too small" % n)
    left = ltree_truncate(u.ltree, k, TARGET)
    right = ltree_truncate(v.ltree, k, SOURCE)
    if ltree_tree(left) != ltree_tree(right):
        raise DiagramError("boundary shapes at level %d disagree" % k)
    if left != right:
        where, got, want = _first_mismatch(left, right)
        raise DiagramError(
            "boundary labels at level %d disagree at %r: %r vs %r"
            % (k, where, got, want),
            position=where,
        )
    return PastingDiagram(ltree_glue(u.ltree, v.ltree, k), n, u.host)


def relabel(u: PastingDiagram, fn, host) -> PastingDiagram:
    """Map ``fn`` over every label, producing a diagram over ``host``."""
    return PastingDiagram(ltree_map(u.ltree, fn), u.ambient, host)


# ---------------------------------------------------------------------------
# Flattening (the monad multiplication)
# ---------------------------------------------------------------------------


class HostOverDiagrams:
    """Host whose cells are pasting diagrams over some inner host."""

    def __init__(self, inner):
        self.inner = inner

    def dim(self, d: PastingDiagram) -> int:
        return d.ambient

    def boundary(self, d: PastingDiagram, level: int, side: str) -> PastingDiagram:
        return diagram_boundary(d, level, side)


class SchemeHost:
    """Host whose cells are pasting schemes (diagrams over the point)."""

    def dim(self, k: PastingScheme) -> int:
        return k.ambient

    def boundary(self, k: PastingScheme, level: int, side: str) -> PastingScheme:
        return scheme_boundary(k, level, side)


SCHEME_HOST = SchemeHost()


def fold_pasting(pieces, levels, n, glue_fn, degenerate_fn):
    """Fold ``pieces`` along ``levels``, grouping by minimal joint level.

    A run of joints all above level m leaves the m-boundaries of its
    columns untouched, so once the table is split at its minimal level the
    gluings on either side satisfy the full boundary-match precondition.
    """
    pieces = list(pieces)
    levels = list(levels)
    if not levels:
        return degenerate_fn(pieces[0], n)
    m = min(levels)
    groups = []
    start = 0
    for pos in [i for i, lv in enumerate(levels) if lv == m] + [len(levels)]:
        groups.append(
            fold_pasting(pieces[start : pos + 1], levels[start:pos], n, glue_fn, degenerate_fn)
        )
        start = pos + 1
    return reduce(lambda a, b: glue_fn(a, m, b, n), groups)


def flatten_schemes(entries, levels, n) -> PastingScheme:
    """Flatten a table of schemes; used for instruction arities."""
    return fold_pasting(entries, levels, n, glue_schemes, degenerate_scheme)


def flatten(outer: PastingDiagram) -> PastingDiagram:
    """The monad multiplication: paste a diagram whose labels are diagrams."""
    inner_host = None
    for label in outer.entries:
        if not isinstance(label, PastingDiagram):
            raise DiagramError("flatten needs diagram-valued entries, got %r" % (label,))
        inner_host = label.host
    meta = HostOverDiagrams(inner_host)
    _check_ltree(meta, outer.ltree)
    shape = outer.shape()
    levels = [h for kind, h in _tree_table(shape.tree) if kind == "joint"]
    return fold_pasting(outer.entries, levels, outer.ambient, glue, degenerate)


def unflatten(b: PastingDiagram, piece_schemes, levels):
    """Decompose a flattened diagram back into its pieces.

    ``piece_schemes`` are the expected shapes of the pieces and ``levels``
    the joint dimensions between them; this inverts :func:`fold_pasting`.
    """
    piece_schemes = list(piece_schemes)
    levels = list(levels)
    if not levels:
        want = piece_schemes[0]
        if ltree_tree(b.ltree) != want.tree:
            raise DiagramError("piece does not match expected shape %r" % (want,))
        return [PastingDiagram(b.ltree, want.ambient, b.host)]
    m = min(levels)
    cuts = [i for i, lv in enumerate(levels) if lv == m]
    group_bounds = []
    start = 0
    for pos in cuts + [len(levels)]:
        group_bounds.append((start, pos + 1))
        start = pos + 1
    out = []
    rest = b.ltree
    for gi, (lo, hi) in enumerate(group_bounds):
        group_schemes = piece_schemes[lo:hi]
        group_levels = levels[lo : hi - 1]
        if gi < len(group_bounds) - 1:
            group_shape = flatten_schemes(group_schemes, group_levels, b.ambient)
            left, rest = ltree_split(rest, group_shape.tree, m)
        else:
            left = rest
        part = PastingDiagram(left, b.ambient, b.host)
        out.extend(unflatten(part, group_schemes, group_levels))
    return out
