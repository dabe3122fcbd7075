"""Builders, random generators, and the randomized invariant suites.

Everything here is deterministic given a seed: generators draw from a
``random.Random`` passed in explicitly, and suite reports are plain
strings assembled from sorted data.  The CLI ``selftest`` command and the
acceptance tests both run these suites.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import (
    CellMap,
    FreeWeak,
    HomView,
    StrictCatTable,
    StrictFunctor,
    StrictWeak,
    free_weak,
    identity_functor,
    strict_as_weak,
    whisker,
)
from .errors import OmegaError
from .globset import SOURCE, TARGET, CellRef, GlobularSet
from .instructions import (
    INSTR_HOST,
    Compose,
    Contract,
    Unit,
    arity,
    comp_instr,
    compose_instr,
    contract,
    id_instr,
    instr_boundary,
    instruction_size,
    l1_compose,
    l1_identity,
    normalize,
    parallel_instr,
    sp,
    substitute,
    unit_args,
)
from .pasting import (
    HostOverDiagrams,
    LTree,
    PastingDiagram,
    PastingScheme,
    degenerate,
    degenerate_scheme,
    diagram_boundary,
    diagram_from_entries,
    flatten,
    glue,
    ltree_map,
    relabel,
    scheme_boundary,
    scheme_to_tree,
    tree_height,
    tree_to_scheme,
    unit_diagram,
    validate_scheme,
)

# ---------------------------------------------------------------------------
# Category builders (truncation 1)
# ---------------------------------------------------------------------------


@dataclass
class CatSpec:
    """A small category presented by named objects and arrows."""

    objects: list
    arrows: dict  # name -> (src_obj, tgt_obj)
    comp: dict  # (f, g) -> h for non-identity composable pairs
    identities: dict = field(default_factory=dict)  # obj -> arrow name

    def identity_of(self, obj):
        return self.identities[obj]


def cat_table(spec: CatSpec) -> StrictCatTable:
    """Materialize a :class:`CatSpec` as a validated strict table."""
    objs = list(spec.objects)
    names = list(spec.arrows)
    obj_idx = {o: i for i, o in enumerate(objs)}
    arr_idx = {a: i for i, a in enumerate(names)}
    src = [[obj_idx[spec.arrows[a][0]] for a in names]]
    tgt = [[obj_idx[spec.arrows[a][1]] for a in names]]
    ids = [[arr_idx[spec.identities[o]] for o in objs]]
    rule = {}
    for f in names:
        for g in names:
            if spec.arrows[f][1] != spec.arrows[g][0]:
                continue
            if f == spec.identity_of(spec.arrows[f][0]):
                h = g
            elif g == spec.identity_of(spec.arrows[g][1]):
                h = f
            else:
                h = spec.comp[(f, g)]
            rule[(arr_idx[f], arr_idx[g])] = arr_idx[h]
    return StrictCatTable([objs, names], src, tgt, ids, {(0, 1): rule})


def poset_category(objects, relation) -> CatSpec:
    """Thin category on a reflexive-transitive ``relation`` (set of pairs)."""
    arrows = {}
    identities = {}
    for a in objects:
        identities[a] = "1%s" % a
        arrows["1%s" % a] = (a, a)
    for a, b in sorted(relation):
        if a != b:
            arrows["%s<%s" % (a, b)] = (a, b)
    comp = {}
    name = {(s, t): n for n, (s, t) in arrows.items()}
    for f, (a, b) in arrows.items():
        for g, (b2, c) in arrows.items():
            if b == b2:
                comp[(f, g)] = name[(a, c)]
    spec = CatSpec(list(objects), arrows, comp, identities)
    return spec


def chain_poset(n: int) -> CatSpec:
    objs = ["p%d" % i for i in range(n)]
    rel = {(objs[i], objs[j]) for i in range(n) for j in range(i, n)}
    return poset_category(objs, rel)


def diamond_poset() -> CatSpec:
    objs = ["bot", "l", "r", "top"]
    rel = {(a, a) for a in objs} | {
        ("bot", "l"),
        ("bot", "r"),
        ("bot", "top"),
        ("l", "top"),
        ("r", "top"),
    }
    return poset_category(objs, rel)


def discrete_category(n: int) -> CatSpec:
    objs = ["o%d" % i for i in range(n)]
    return poset_category(objs, {(a, a) for a in objs})


def indiscrete_category(n: int) -> CatSpec:
    """All hom-sets singletons; every arrow is invertible."""
    objs = ["c%d" % i for i in range(n)]
    arrows = {}
    identities = {}
    for a in objs:
        for b in objs:
            nm = "1%s" % a if a == b else "%s~%s" % (a, b)
            arrows[nm] = (a, b)
            if a == b:
                identities[a] = nm
    comp = {}
    name = {(s, t): n2 for n2, (s, t) in arrows.items()}
    for f, (a, b) in arrows.items():
        for g, (b2, c) in arrows.items():
            if b == b2:
                comp[(f, g)] = name[(a, c)]
    return CatSpec(objs, arrows, comp, identities)


def monoid_category(elements, mult, unit, obj="m") -> CatSpec:
    arrows = {str(e): (obj, obj) for e in elements}
    comp = {
        (str(a), str(b)): str(mult[(a, b)]) for a in elements for b in elements
    }
    return CatSpec([obj], arrows, comp, {obj: str(unit)})


def cyclic_group_category(k: int) -> CatSpec:
    mult = {(a, b): (a + b) % k for a in range(k) for b in range(k)}
    return monoid_category(list(range(k)), mult, 0, obj="g")


def idempotent_monoid_category() -> CatSpec:
    """The monoid {1, e} with e idempotent; e has no two-sided inverse."""
    mult = {("u", "u"): "u", ("u", "e"): "e", ("e", "u"): "e", ("e", "e"): "e"}
    return monoid_category(["u", "e"], mult, "u")


def function_monoid_category(k: int, gens) -> CatSpec:
    """Submonoid of maps {0..k-1} -> {0..k-1} generated by ``gens``."""
    ident = tuple(range(k))
    elems = {ident}
    frontier = [ident] + [tuple(g) for g in gens]
    elems.update(frontier)
    changed = True
    while changed:
        changed = False
        for a in sorted(elems):
            for b in sorted(elems):
                c = tuple(a[b[i]] for i in range(k))
                if c not in elems:
                    elems.add(c)
                    changed = True
    elems = sorted(elems)
    label = {e: "f" + "".join(map(str, e)) for e in elems}
    mult = {
        (label[a], label[b]): label[tuple(a[b[i]] for i in range(k))]
        for a in elems
        for b in elems
    }
    return monoid_category([label[e] for e in elems], {
        (x, y): mult[(x, y)] for x in [label[e] for e in elems] for y in [label[e] for e in elems]
    }, label[ident])


def walking_arrow() -> CatSpec:
    return poset_category(["a", "b"], {("a", "a"), ("a", "b"), ("b", "b")})


def walking_iso() -> CatSpec:
    return indiscrete_category(2)


def parallel_pair_category() -> CatSpec:
    arrows = {
        "1a": ("a", "a"),
        "1b": ("b", "b"),
        "u": ("a", "b"),
        "v": ("a", "b"),
    }
    return CatSpec(["a", "b"], arrows, {}, {"a": "1a", "b": "1b"})


def disjoint_union(s1: CatSpec, s2: CatSpec, tags=("L", "R")) -> CatSpec:
    def rn(tag, x):
        return "%s.%s" % (tag, x)

    objects = [rn(tags[0], o) for o in s1.objects] + [rn(tags[1], o) for o in s2.objects]
    arrows = {}
    comp = {}
    identities = {}
    for tag, s in zip(tags, (s1, s2)):
        for a, (x, y) in s.arrows.items():
            arrows[rn(tag, a)] = (rn(tag, x), rn(tag, y))
        for pair, h in s.comp.items():
            comp[(rn(tag, pair[0]), rn(tag, pair[1]))] = rn(tag, h)
        for o, i in s.identities.items():
            identities[rn(tag, o)] = rn(tag, i)
    return CatSpec(objects, arrows, comp, identities)


def product_cat(s1: CatSpec, s2: CatSpec) -> CatSpec:
    def rn(a, b):
        return "(%s,%s)" % (a, b)

    objects = [rn(a, b) for a in s1.objects for b in s2.objects]
    arrows = {}
    identities = {}
    for f, (a, b) in s1.arrows.items():
        for g, (c, d) in s2.arrows.items():
            arrows[rn(f, g)] = (rn(a, c), rn(b, d))
    for a in s1.objects:
        for b in s2.objects:
            identities[rn(a, b)] = rn(s1.identity_of(a), s2.identity_of(b))

    def compose1(s, f, g):
        if f == s.identity_of(s.arrows[f][0]):
            return g
        if g == s.identity_of(s.arrows[g][1]):
            return f
        return s.comp[(f, g)]

    comp = {}
    for f1, (a1, b1) in s1.arrows.items():
        for g1, (b1x, c1) in s1.arrows.items():
            if b1 != b1x:
                continue
            for f2, (a2, b2) in s2.arrows.items():
                for g2, (b2x, c2) in s2.arrows.items():
                    if b2 != b2x:
                        continue
                    comp[(rn(f1, f2), rn(g1, g2))] = rn(
                        compose1(s1, f1, g1), compose1(s2, f2, g2)
                    )
    return CatSpec(objects, arrows, comp, identities)


# ---------------------------------------------------------------------------
# Truncation-2 tables
# ---------------------------------------------------------------------------


def materialize(table: StrictCatTable, n: int) -> StrictCatTable:
    """Raise the truncation by adding formal identity cells explicitly."""
    cells = [list(c) for c in table.cells]
    src = [list(m) for m in table.src]
    tgt = [list(m) for m in table.tgt]
    ids = [list(m) for m in table.ids]
    comp = dict(table.comp)
    N = len(cells) - 1
    top = len(cells[N])
    for d in range(N + 1, n + 1):
        cells.append(["id%d(%s)" % (d, name) for name in cells[N]])
        src.append(list(range(top)))
        tgt.append(list(range(top)))
        ids.append(list(range(top)))
        for k in range(d):
            if k < N:
                comp[(k, d)] = dict(comp[(k, N)])
            else:
                comp[(k, d)] = {(i, i): i for i in range(top)}
    ids = ids[:n]
    return StrictCatTable(cells, src, tgt, ids, comp)


def materialize_functor(f: StrictFunctor, n: int) -> StrictFunctor:
    S = strict_as_weak(materialize(f.source.table, n))
    T = strict_as_weak(materialize(f.target.table, n))
    N = f.source.truncation
    maps = [list(m) for m in f.maps] + [list(f.maps[N]) for _ in range(N + 1, n + 1)]
    return StrictFunctor(S, T, maps, name=f.name)


def suspension(spec: CatSpec) -> StrictCatTable:
    """The one-hom 2-category with hom(0, 1) the given category."""
    cells0 = ["0", "1"]
    cells1 = ["i0", "i1"] + ["^%s" % o for o in spec.objects]
    cells2 = ["ii0", "ii1"] + ["^%s" % a for a in spec.arrows]
    i1 = {n: i for i, n in enumerate(cells1)}
    i2 = {n: i for i, n in enumerate(cells2)}
    src1 = [0, 1] + [0] * len(spec.objects)
    tgt1 = [0, 1] + [1] * len(spec.objects)
    src2 = [i1["i0"], i1["i1"]] + [i1["^%s" % spec.arrows[a][0]] for a in spec.arrows]
    tgt2 = [i1["i0"], i1["i1"]] + [i1["^%s" % spec.arrows[a][1]] for a in spec.arrows]
    ids0 = [i1["i0"], i1["i1"]]
    ids1 = [i2["ii0"], i2["ii1"]] + [i2["^%s" % spec.identity_of(o)] for o in spec.objects]

    comp01 = {}
    for i, n in enumerate(cells1):
        s, t = src1[i], tgt1[i]
        comp01[(i1["i%d" % s], i)] = i
        comp01[(i, i1["i%d" % t])] = i

    def vcomp(a, b):
        if a == spec.identity_of(spec.arrows[a][0]):
            return b
        if b == spec.identity_of(spec.arrows[b][1]):
            return a
        return spec.comp[(a, b)]

    comp12 = {(i2["ii0"], i2["ii0"]): i2["ii0"], (i2["ii1"], i2["ii1"]): i2["ii1"]}
    for a, (x, y) in spec.arrows.items():
        for b, (y2, z) in spec.arrows.items():
            if y == y2:
                comp12[(i2["^%s" % a], i2["^%s" % b])] = i2["^%s" % vcomp(a, b)]
    # the only 0-composable 2-cell pairs involve an identity on an endpoint
    comp02 = {}
    for i, n in enumerate(cells2):
        if n == "ii0":
            comp02[(i, i)] = i
            for j in range(2, len(cells2)):
                comp02[(i, j)] = j
        elif n == "ii1":
            comp02[(i, i)] = i
            for j in range(2, len(cells2)):
                comp02[(j, i)] = j
    return StrictCatTable(
        [cells0, cells1, cells2],
        [src1, src2],
        [tgt1, tgt2],
        [ids0, ids1],
        {(0, 1): comp01, (0, 2): comp02, (1, 2): comp12},
    )


def two_squares_twocat() -> StrictCatTable:
    """The free 2-category on two horizontally adjacent squares.

    Objects a, b, c; generating 2-cells al : f => g (a to b) and
    be : h => k (b to c).  The hom from a to c is the product of the two
    walking-arrow homs, which is what makes this the interchange oracle.
    """
    homAB = {"obj": ["f", "g"], "arr": {"1f": ("f", "f"), "1g": ("g", "g"), "al": ("f", "g")}}
    homBC = {"obj": ["h", "k"], "arr": {"1h": ("h", "h"), "1k": ("k", "k"), "be": ("h", "k")}}

    cells0 = ["a", "b", "c"]
    pair1 = ["%s;%s" % (u, v) for u in homAB["obj"] for v in homBC["obj"]]
    cells1 = ["1a", "1b", "1c"] + homAB["obj"] + homBC["obj"] + pair1
    pair2 = ["%s;%s" % (p, q) for p in homAB["arr"] for q in homBC["arr"]]
    cells2 = ["11a", "11b", "11c"] + list(homAB["arr"]) + list(homBC["arr"]) + pair2
    i1 = {n: i for i, n in enumerate(cells1)}
    i2 = {n: i for i, n in enumerate(cells2)}

    def obj_of1(n):
        if n in ("1a", "1b", "1c"):
            o = n[1]
            return (o, o)
        if n in homAB["obj"]:
            return ("a", "b")
        if n in homBC["obj"]:
            return ("b", "c")
        return ("a", "c")

    src1 = [cells0.index(obj_of1(n)[0]) for n in cells1]
    tgt1 = [cells0.index(obj_of1(n)[1]) for n in cells1]

    def ends2(n):
        if n.startswith("11"):
            o = "1" + n[2]
            return (o, o)
        if n in homAB["arr"]:
            return homAB["arr"][n]
        if n in homBC["arr"]:
            return homBC["arr"][n]
        p, q = n.split(";")
        pa = homAB["arr"][p]
        qa = homBC["arr"][q]
        return ("%s;%s" % (pa[0], qa[0]), "%s;%s" % (pa[1], qa[1]))

    src2 = [i1[ends2(n)[0]] for n in cells2]
    tgt2 = [i1[ends2(n)[1]] for n in cells2]

    ids0 = [i1["1a"], i1["1b"], i1["1c"]]

    def id2_of(n):
        if n in ("1a", "1b", "1c"):
            return "1" + n
        if n in homAB["obj"] or n in homBC["obj"]:
            return "1" + n
        u, v = n.split(";")
        return "1%s;1%s" % (u, v)

    ids1 = [i2[id2_of(n)] for n in cells1]

    # 1-cell composition: pairing, with identities absorbed
    comp01 = {}
    for f in cells1:
        a, b = obj_of1(f)
        for g in cells1:
            b2, c = obj_of1(g)
            if b != b2:
                continue
            if f == "1" + a:
                h = g
            elif g == "1" + c:
                h = f
            else:
                h = "%s;%s" % (f, g)
            comp01[(i1[f], i1[g])] = i1[h]

    def varr(hom, p, q):
        sp_, tp = hom["arr"][p]
        sq, tq = hom["arr"][q]
        if p == "1" + sp_ == "1" + tp:
            return q
        if q == "1" + sq == "1" + tq:
            return p
        raise OmegaError("non-composable 2-cells in a walking-arrow hom")

    def vert(p, q):
        """Vertical composite of 2-cell names (same hom)."""
        if p.startswith("11"):
            return q
        if q.startswith("11"):
            return p
        if p in homAB["arr"] and q in homAB["arr"]:
            return varr(homAB, p, q)
        if p in homBC["arr"] and q in homBC["arr"]:
            return varr(homBC, p, q)
        p1, p2 = p.split(";")
        q1, q2 = q.split(";")
        return "%s;%s" % (vert(p1, q1), vert(p2, q2))

    comp12 = {}
    for p in cells2:
        for q in cells2:
            if tgt2[i2[p]] == src2[i2[q]]:
                comp12[(i2[p], i2[q])] = i2[vert(p, q)]

    comp02 = {}
    for p in cells2:
        pa, pb = ends2(p)
        for q in cells2:
            qa, qb = ends2(q)
            if tgt1[i1[pa]] != src1[i1[qa]]:
                continue
            if p.startswith("11"):
                h = q
            elif q.startswith("11"):
                h = p
            else:
                h = "%s;%s" % (p, q)
            comp02[(i2[p], i2[q])] = i2[h]

    return StrictCatTable(
        [cells0, cells1, cells2],
        [src1, src2],
        [tgt1, tgt2],
        [ids0, ids1],
        {(0, 1): comp01, (0, 2): comp02, (1, 2): comp12},
    )


# ---------------------------------------------------------------------------
# Functor builders
# ---------------------------------------------------------------------------


def functor_by_names(S: StrictWeak, T: StrictWeak, cell_maps, name="f") -> StrictFunctor:
    """Build a functor from name->name maps, one dict per dimension."""
    maps = []
    for d, table in enumerate(cell_maps):
        maps.append([
            T.glob.cells[d].index(table[n]) for n in S.glob.cells[d]
        ])
    return StrictFunctor(S, T, maps, name=name)
