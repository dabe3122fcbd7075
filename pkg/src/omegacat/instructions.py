"""The calculus of pasting instructions: terms denoting cells of L1.

Terms are built from three constructors: ``Unit(n)`` (the image of the
monad unit), ``Contract(src, tgt, scheme)`` (a lift supplied by the
contraction), and ``Compose(head, args)`` (the operadic multiplication,
where ``args`` is a pasting diagram labelled by instructions).  Equality
of L1-cells is structural equality of normal forms; normalization
collapses unit substitutions and unit heads and flattens nested
composites, innermost first.

The arity map sends a term to its pasting scheme and is a strict map of
monads, so the arity of a composite is the flattened table of argument
arities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ArityError, DimensionError
from .globset import SIDES, SOURCE, TARGET
from .pasting import (
    LTree,
    PastingDiagram,
    PastingScheme,
    degenerate_scheme,
    diagram_boundary,
    diagram_from_entries,
    globe_scheme,
    ltree_map,
    ltree_nodes,
    scheme_boundary,
    unflatten,
    unit_diagram,
    validate_scheme,
    flatten_schemes,
    _tree_table,
)


@dataclass(frozen=True)
class Unit:
    """The standard instruction of arity [n]@n (paste nothing)."""

    dim: int


@dataclass(frozen=True)
class Contract:
    """A contraction cell filling a parallel pair over the given scheme."""

    src: "Instruction"
    tgt: "Instruction"
    scheme: PastingScheme

    @property
    def dim(self):
        return self.scheme.ambient


@dataclass(frozen=True)
class Compose:
    """Operadic composite of a head instruction with argument instructions."""

    head: "Instruction"
    args: PastingDiagram

    @property
    def dim(self):
        return self.args.ambient


Instruction = Union[Unit, Contract, Compose]


class InstructionHost:
    """Host protocol for diagrams labelled by instructions."""

    def dim(self, phi: Instruction) -> int:
        return phi.dim

    def boundary(self, phi: Instruction, level: int, side: str) -> Instruction:
        return instr_boundary(phi, level, side)


INSTR_HOST = InstructionHost()


def arity(phi: Instruction) -> PastingScheme:
    """The pasting scheme consumed by the instruction."""
    if isinstance(phi, Unit):
        return globe_scheme(phi.dim)
    if isinstance(phi, Contract):
        return phi.scheme
    if isinstance(phi, Compose):
        shape = phi.args.shape()
        levels = [h for kind, h in _tree_table(shape.tree) if kind == "joint"]
        return flatten_schemes(
            [arity(e) for e in phi.args.entries], levels, shape.ambient
        )
    raise ArityError("not an instruction: %r" % (phi,))


def instr_boundary(phi: Instruction, level: int, side: str) -> Instruction:
    if side not in SIDES:
        raise ArityError("side must be one of %r" % (SIDES,))
    if level >= phi.dim:
        raise DimensionError(
            "boundary level %d must be below dimension %d" % (level, phi.dim)
        )
    if isinstance(phi, Unit):
        return Unit(level)
    if isinstance(phi, Contract):
        edge = phi.src if side == SOURCE else phi.tgt
        if level == phi.dim - 1:
            return edge
        return instr_boundary(edge, level, side)
    head = phi.head
    if level < head.dim:
        head = instr_boundary(head, level, side)
    return normalize(Compose(head, diagram_boundary(phi.args, level, side)))


def parallel_instr(a: Instruction, b: Instruction) -> bool:
    if a.dim != b.dim:
        raise DimensionError("parallel instructions need equal dimensions")
    if a.dim == 0:
        return True
    lvl = a.dim - 1
    return (
        instr_boundary(a, lvl, SOURCE) == instr_boundary(b, lvl, SOURCE)
        and instr_boundary(a, lvl, TARGET) == instr_boundary(b, lvl, TARGET)
    )


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def _is_identity_substitution(args: PastingDiagram) -> bool:
    return all(
        label == Unit(h)
        for _, h, node in ltree_nodes(args.ltree)
        for label in node.labels
    )


def _sole_entry(args: PastingDiagram) -> Instruction:
    entries = args.entries
    if len(entries) != 1:
        raise ArityError("unit head applied to a non-singleton diagram")
    return entries[0]


def substitute(inner: PastingDiagram, outer: PastingDiagram) -> PastingDiagram:
    """Graft ``outer`` argument pieces into the entries of ``inner``.

    ``inner`` is the argument diagram of a composite head; ``outer`` has
    the flattened shape.  Each entry of ``inner`` receives the piece of
    ``outer`` occupying its region, and fenceposts are rederived.
    """
    entries = inner.entries
    shape = inner.shape()
    levels = [h for kind, h in _tree_table(shape.tree) if kind == "joint"]
    pieces = unflatten(outer, [arity(e) for e in entries], levels)
    new_leaves = [
        normalize(Compose(e, piece)) for e, piece in zip(entries, pieces)
    ]
    return diagram_from_entries(INSTR_HOST, shape, new_leaves)


def normalize(term: Instruction) -> Instruction:
    """Reduce to normal form: no unit substitutions, unit heads, or nesting.

    Idempotent; preserves arity and boundaries.  Raw terms must be
    arity-compatible, otherwise :class:`ArityError` is raised.
    """
    if isinstance(term, Unit):
        return term
    if isinstance(term, Contract):
        src = normalize(term.src)
        tgt = normalize(term.tgt)
        if src is term.src and tgt is term.tgt:
            return term
        return Contract(src, tgt, term.scheme)
    if not isinstance(term, Compose):
        raise ArityError("not an instruction: %r" % (term,))
    head = normalize(term.head)
    args = PastingDiagram(
        ltree_map(term.args.ltree, normalize), term.args.ambient, INSTR_HOST
    )
    if args.shape() != arity(head):
        raise ArityError(
            "argument shape %r does not match head arity %r"
            % (args.shape(), arity(head))
        )
    if _is_identity_substitution(args):
        return head
    if isinstance(head, Unit):
        return _sole_entry(args)
    if isinstance(head, Compose):
        return normalize(Compose(head.head, substitute(head.args, args)))
    return Compose(head, args)


def is_normal(term: Instruction) -> bool:
    return normalize(term) == term


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def contract(src: Instruction, tgt: Instruction, k: PastingScheme) -> Contract:
    """The contraction cell over ``k`` filling the parallel pair (src, tgt)."""
    if k.ambient < 1:
        raise DimensionError("contraction needs a scheme of dimension >= 1")
    src = normalize(src)
    tgt = normalize(tgt)
    if src.dim != k.ambient - 1 or tgt.dim != k.ambient - 1:
        raise DimensionError(
            "contraction boundaries must have dimension %d" % (k.ambient - 1)
        )
    if not parallel_instr(src, tgt):
        raise ArityError("contraction boundaries must be parallel")
    want = scheme_boundary(k, k.ambient - 1)
    if arity(src) != want or arity(tgt) != want:
        raise ArityError(
            "contraction boundaries must have arity %r" % (want,)
        )
    return Contract(src, tgt, k)


def sp(k: PastingScheme) -> Instruction:
    """The standard pasting instruction of arity ``k``."""
    if k.is_globe():
        return Unit(k.ambient)
    lower = sp(scheme_boundary(k, k.ambient - 1))
    return Contract(lower, lower, k)


def id_instr(m: int, n: int) -> Instruction:
    """The instruction taking an m-cell to its identity n-cell."""
    if not m < n:
        raise DimensionError("identity instruction needs m < n")
    return sp(globe_scheme(m, n))


def comp_instr(m1: int, m2: int, k: int, n: int) -> Instruction:
    """The instruction composing an m1-cell and an m2-cell along a k-cell."""
    if not (k < m1 <= n and k < m2 <= n):
        raise DimensionError("composition instruction needs k < dims <= n")
    return sp(validate_scheme([m1, m2], [k], n))


def compose_instr(phi: Instruction, args: PastingDiagram) -> Instruction:
    """Operadic composite, normalized; ``args`` must match the arity."""
    if args.shape() != arity(phi):
        raise ArityError(
            "argument shape %r does not match arity %r" % (args.shape(), arity(phi))
        )
    return normalize(Compose(phi, args))


def unit_args(k: PastingScheme) -> PastingDiagram:
    """The identity substitution of shape ``k`` (all labels Unit)."""
    lt = _unit_ltree(k.tree, 0)
    return PastingDiagram(lt, k.ambient, INSTR_HOST)


def _unit_ltree(tree, h):
    children = tuple(_unit_ltree(c, h + 1) for c in tree)
    return LTree((Unit(h),) * (len(children) + 1), children)


# ---------------------------------------------------------------------------
# L1 as a weak category: composition and identities of instructions
# ---------------------------------------------------------------------------


def l1_identity(phi: Instruction, n: int) -> Instruction:
    """The identity n-cell on an instruction, in L1 itself."""
    if not phi.dim < n:
        raise DimensionError("identity needs target dimension above %d" % phi.dim)
    return compose_instr(id_instr(phi.dim, n), unit_diagram(INSTR_HOST, phi, n))


def l1_compose(u: Instruction, v: Instruction, k: int, n: int) -> Instruction:
    """Binary composition of instructions along a k-boundary, in L1."""
    scheme = validate_scheme([u.dim, v.dim], [k], n)
    args = diagram_from_entries(INSTR_HOST, scheme, [u, v])
    return compose_instr(comp_instr(u.dim, v.dim, k, n), args)


def instruction_size(term: Instruction) -> int:
    """Node count including argument labels; a rough complexity measure."""
    if isinstance(term, Unit):
        return 1
    if isinstance(term, Contract):
        return 1 + instruction_size(term.src) + instruction_size(term.tgt)
    total = 1 + instruction_size(term.head)
    for _, _, node in ltree_nodes(term.args.ltree):
        for label in node.labels:
            total += instruction_size(label)
    return total
