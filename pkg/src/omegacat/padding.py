"""The padding construction.

Given two instructions of equal arity and dimension n (not necessarily
parallel), padding builds towers of contraction cells that adjust one to
the boundaries of the other, dimension by dimension.  Applied to a cell
between two evaluations of the first instruction, it yields a cell
between the corresponding evaluations of the second.  Every intermediate
typing equation is checked; failures name the stage at which they occur,
since this is the most delicate construction in the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FreeWeak, WeakCategory
from .errors import DimensionError, OmegaError, PaddingError
from .globset import SOURCE, TARGET
from .instructions import (
    Instruction,
    arity,
    contract,
    instr_boundary,
    l1_compose,
    parallel_instr,
)
from .pasting import (
    PastingDiagram,
    PastingScheme,
    degenerate,
    degenerate_scheme,
    diagram_boundary,
    parallel_diagrams,
    scheme_boundary,
)


@dataclass
class PadSequence:
    """The towers produced by padding ``phi`` to ``chi``.

    ``lam[i]`` and ``rho[i]`` (1-indexed: entry 0 is stage 1) are the pad
    instructions, ``phi_tower`` runs from stage 0 (= phi) to stage n, and
    when cells are attached ``ell``/``r`` hold the evaluated pads and
    ``w`` the corrected cells from stage 0 (= the input) to stage n+1
    (= the padding).
    """

    n: int
    arity: PastingScheme
    phi: Instruction
    chi: Instruction
    lam: tuple
    rho: tuple
    phi_tower: tuple
    ell: tuple = ()
    r: tuple = ()
    w: tuple = ()

    @property
    def result(self):
        if not self.w:
            raise PaddingError("no cells attached to this pad sequence")
        return self.w[-1]


def _pad_scheme(k: PastingScheme, i: int) -> PastingScheme:
    """Arity of the stage-i pads: the (i-1)-boundary of k, degenerate at i.

    At stage n+1 the boundary is read as k itself, following the
    construction's parenthetical convention.
    """
    n = k.ambient
    if i <= n:
        return degenerate_scheme(scheme_boundary(k, i - 1), i)
    return degenerate_scheme(k, n + 1)


def pad_instructions(phi: Instruction, chi: Instruction) -> PadSequence:
    """Build the lambda/rho/phi towers for padding ``phi`` to ``chi``."""
    n = phi.dim
    if n < 1:
        raise PaddingError("padding needs dimension >= 1", stage=0)
    if chi.dim != n:
        raise PaddingError("instructions must share their dimension", stage=0)
    k = arity(phi)
    if arity(chi) != k:
        raise PaddingError("instructions must share their arity", stage=0)

    lam, rho, tower = [], [], [phi]
    for i in range(1, n + 2):
        scheme_i = _pad_scheme(k, i)
        prev = tower[i - 1]
        if i <= n:
            src_chi = instr_boundary(chi, i - 1, SOURCE)
            src_prev = instr_boundary(prev, i - 1, SOURCE)
            tgt_chi = instr_boundary(chi, i - 1, TARGET)
            tgt_prev = instr_boundary(prev, i - 1, TARGET)
        else:
            src_chi, src_prev = chi, prev
            tgt_chi, tgt_prev = chi, prev
        try:
            lam_i = contract(src_chi, src_prev, scheme_i)
            rho_i = contract(tgt_prev, tgt_chi, scheme_i)
        except OmegaError as err:
            raise PaddingError("pad instruction invalid: %s" % err, stage=i)
        lam.append(lam_i)
        rho.append(rho_i)
        if i <= n:
            phi_i = l1_compose(lam_i, l1_compose(prev, rho_i, i - 1, n), i - 1, n)
            if arity(phi_i) != k:
                raise PaddingError("stage instruction changed arity", stage=i)
            if instr_boundary(phi_i, i - 1, SOURCE) != src_chi:
                raise PaddingError("stage source boundary is wrong", stage=i)
            if instr_boundary(phi_i, i - 1, TARGET) != tgt_chi:
                raise PaddingError("stage target boundary is wrong", stage=i)
            tower.append(phi_i)
    if not parallel_instr(tower[n], chi):
        raise PaddingError("final stage is not parallel to the target", stage=n)
    return PadSequence(n, k, phi, chi, tuple(lam), tuple(rho), tuple(tower))


def pad_cells(
    X: WeakCategory,
    phi: Instruction,
    chi: Instruction,
    u: PastingDiagram,
    v: PastingDiagram,
    w,
) -> PadSequence:
    """Evaluate the padding of ``w : eval(phi, u) -> eval(phi, v)`` in X."""
    seq = pad_instructions(phi, chi)
    n, k = seq.n, seq.arity
    if u.shape() != k or v.shape() != k:
        raise PaddingError("diagrams must have the instructions' arity", stage=0)
    if not parallel_diagrams(u, v):
        raise PaddingError("diagrams must be parallel", stage=0)
    if X.dim(w) != n + 1:
        raise PaddingError("the cell must live one dimension up", stage=0)
    if X.boundary(w, n, SOURCE) != X.eval(phi, u):
        raise PaddingError("cell source is not eval(phi, u)", stage=0)
    if X.boundary(w, n, TARGET) != X.eval(phi, v):
        raise PaddingError("cell target is not eval(phi, v)", stage=0)

    ells, rs, ws = [], [], [w]
    for i in range(1, n + 2):
        if i <= n:
            du = degenerate(diagram_boundary(u, i - 1, SOURCE), i)
            dv = degenerate(diagram_boundary(v, i - 1, TARGET), i)
        else:
            du = degenerate(u, n + 1)
            dv = degenerate(v, n + 1)
        try:
            ell_i = X.eval(seq.lam[i - 1], du)
            r_i = X.eval(seq.rho[i - 1], dv)
            inner = X.compose(ws[i - 1], r_i, i - 1, n + 1)
            w_i = X.compose(ell_i, inner, i - 1, n + 1)
        except OmegaError as err:
            raise PaddingError("stage failed: %s" % err, stage=i)
        stage_instr = seq.phi_tower[i] if i <= n else chi
        if X.boundary(w_i, n, SOURCE) != X.eval(stage_instr, u):
            raise PaddingError("stage source boundary is wrong", stage=i)
        if X.boundary(w_i, n, TARGET) != X.eval(stage_instr, v):
            raise PaddingError("stage target boundary is wrong", stage=i)
        ells.append(ell_i)
        rs.append(r_i)
        ws.append(w_i)
    return PadSequence(
        n, k, phi, chi, seq.lam, seq.rho, seq.phi_tower,
        tuple(ells), tuple(rs), tuple(ws),
    )


def pad(X, phi, chi, u, v, w):
    """The phi-to-chi padding of w, with full intermediate validation."""
    return pad_cells(X, phi, chi, u, v, w).result


def coherence(X: WeakCategory, phi: Instruction, phi2: Instruction, u: PastingDiagram):
    """The invertible coherence cell eval(phi, u) -> eval(phi2, u).

    Requires ``phi`` and ``phi2`` parallel with equal arity, the shape of
    ``u``; the result is the contraction over the degenerate scheme
    evaluated at the degenerate diagram.
    """
    n = phi.dim
    if phi2.dim != n:
        raise DimensionError("coherence needs instructions of equal dimension")
    k = arity(phi)
    if arity(phi2) != k or u.shape() != k:
        raise OmegaError("coherence needs equal arities matching the diagram")
    if not parallel_instr(phi, phi2):
        raise OmegaError("coherence needs parallel instructions")
    lift = contract(phi, phi2, degenerate_scheme(k, n + 1))
    return X.eval(lift, degenerate(u, n + 1))


@dataclass
class PadNaturality:
    """Result of padding a pasting: the padded cell, the direct evaluation
    of the second instruction family, and the coherence witness between
    them."""

    padded: object
    direct: object
    witness: object
    sequence: PadSequence = field(repr=False, default=None)


def pad_naturality(
    X: WeakCategory,
    phi: Instruction,
    chi: Instruction,
    kdot: PastingScheme,
    phidot: Instruction,
    chidot: Instruction,
    wdiag: PastingDiagram,
) -> PadNaturality:
    """Padding applied to a cell that is itself an evaluated pasting.

    ``kdot`` is an (n+1)-scheme from k to k, ``phidot : phi -> phi`` and
    ``chidot : chi -> chi`` have arity ``kdot``, and ``wdiag : u -> v`` is
    a pasting diagram of that shape.  The padded cell is connected to
    eval(chidot, wdiag) by a coherence witness, and on free realizations
    each padding stage agrees exactly with the evaluation of the
    corresponding corrected instruction.
    """
    n = phi.dim
    k = arity(phi)
    if kdot.ambient != n + 1 or scheme_boundary(kdot, n) != k:
        raise PaddingError("kdot must be an (n+1)-scheme from k to k", stage=0)
    for name, instr, base in (("phidot", phidot, phi), ("chidot", chidot, chi)):
        if arity(instr) != kdot:
            raise PaddingError("%s must have arity kdot" % name, stage=0)
        if instr_boundary(instr, n, SOURCE) != base or instr_boundary(instr, n, TARGET) != base:
            raise PaddingError("%s must be an endo-cell on its base" % name, stage=0)
    if wdiag.shape() != kdot:
        raise PaddingError("the pasting must have shape kdot", stage=0)

    u = diagram_boundary(wdiag, n, SOURCE)
    v = diagram_boundary(wdiag, n, TARGET)
    w = X.eval(phidot, wdiag)
    seq = pad_cells(X, phi, chi, u, v, w)

    dots = [phidot]
    for i in range(1, n + 2):
        dots.append(
            l1_compose(
                seq.lam[i - 1],
                l1_compose(dots[i - 1], seq.rho[i - 1], i - 1, n + 1),
                i - 1,
                n + 1,
            )
        )
    if isinstance(X, FreeWeak):
        for i in range(1, n + 2):
            if seq.w[i] != X.eval(dots[i], wdiag):
                raise PaddingError(
                    "padded cell differs from the corrected pasting", stage=i
                )
    witness = coherence(X, dots[n + 1], chidot, wdiag)
    return PadNaturality(seq.result, X.eval(chidot, wdiag), witness, seq)
