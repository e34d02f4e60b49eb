"""The externalization of an internal category into probed indexed
categories, internal functors and transformations, and the
fully-faithfulness check.

An internal category X is externalized at a base object C as the category
whose objects are maps C -> X_0 and morphisms maps C -> X_1, composed
through the inverted Segal comparison at level 2.  Naturality over the
whole (infinite) base is replaced by a finite probe: families out of an
externalization are generated by their values on the generic cells carried
by the level objects themselves, and a stability check under probe
enlargement guards the policy.
"""

from itertools import product as iproduct

from .delta import codegeneracy, face_inclusion
from .errors import ProbeTooSmall
from .fincat import FinCat, SetMor, SetObj, identity_mor
from .internal import InternalCategory

# ---------------------------------------------------------------------------
# Probes
# ---------------------------------------------------------------------------


class Probe:
    """The full subcategory of the base on representatives of all sets of
    size <= max_size."""

    def __init__(self, base, max_size):
        self.base = base
        self.max_size = max_size
        self.objects = [base.range_obj(s, name=f"P{s}") for s in range(max_size + 1)]

    def morphisms(self, src, tgt):
        return self.base.hom_iter(src, tgt)

    def enlarged(self):
        return Probe(self.base, self.max_size + 1)


def default_probe(base, *internal_cats):
    """Probe policy: everything of size one more than the largest level."""
    biggest = max(
        (len(c.level(m)) for c in internal_cats for m in range(c.k + 1)),
        default=1,
    )
    return Probe(base, biggest + 1)


# ---------------------------------------------------------------------------
# The externalized category at one probe object
# ---------------------------------------------------------------------------


class ExtView:
    """Ext(X)(C): objects are tuples over C of points of X_0, morphisms
    tuples of points of X_1; all structure is pointwise."""

    def __init__(self, icat, c):
        self.icat = icat
        self.c = c
        x = icat.x
        self._src_tbl = {e: icat.edge_source(e) for e in x.levels[1]}
        self._tgt_tbl = {e: icat.edge_target(e) for e in x.levels[1]}
        self._id_tbl = {v: icat.identity_edge(v) for v in x.levels[0]}

    def objects(self):
        return iproduct(self.icat.level(0).elements, repeat=len(self.c))

    def morphisms(self):
        return iproduct(self.icat.level(1).elements, repeat=len(self.c))

    def n_objects(self):
        return len(self.icat.level(0)) ** len(self.c)

    def n_morphisms(self):
        return len(self.icat.level(1)) ** len(self.c)

    def src(self, m):
        return tuple(self._src_tbl[e] for e in m)

    def tgt(self, m):
        return tuple(self._tgt_tbl[e] for e in m)

    def ident(self, obj):
        return tuple(self._id_tbl[v] for v in obj)

    def compose(self, second, first):
        """second . first, first applied first; both pointwise composable."""
        return tuple(self.icat.compose_edges(e1, e2)
                     for e1, e2 in zip(first, second))

    def hom(self, a, b):
        """All morphisms a -> b, componentwise filtered."""
        per_point = []
        for va, vb in zip(a, b):
            per_point.append([e for e in self.icat.level(1)
                              if self._src_tbl[e] == va and self._tgt_tbl[e] == vb])
        return [tuple(t) for t in iproduct(*per_point)]

    def as_mor(self, m, level=1):
        """A tuple-presented cell as an actual base morphism C -> X_level."""
        return SetMor(self.c, self.icat.level(level),
                      dict(zip(self.c.elements, m)))

    def restrict(self, u, m):
        """Precompose a tuple-presented cell with u : C' -> C ... wait:
        u : D -> C gives Ext(u) : Ext(C) -> Ext(D) by reindexing."""
        return tuple(m[self.c.index(u(d))] for d in u.src)

    def is_invertible(self, m):
        inv = dict(self.icat.invertible_edges())
        return all(e in inv for e in m)

    def as_fincat(self, name=None):
        objects = sorted(self.objects())
        morphisms = sorted(self.morphisms())
        ob_index = {o: i for i, o in enumerate(objects)}
        mor_index = {m: i for i, m in enumerate(morphisms)}
        src = tuple(ob_index[self.src(m)] for m in morphisms)
        tgt = tuple(ob_index[self.tgt(m)] for m in morphisms)
        identity = tuple(mor_index[self.ident(o)] for o in objects)
        comp = {}
        for f in morphisms:
            for g in morphisms:
                if self.src(g) == self.tgt(f):
                    comp[(mor_index[g], mor_index[f])] = \
                        mor_index[self.compose(g, f)]
        return FinCat(tuple(objects), tuple(morphisms), src, tgt, identity,
                      comp=comp,
                      name=name or f"Ext({self.icat.x.name})({self.c.name})")


class IndexedCategory:
    """A probed assignment of categories with contravariant restriction.

    ``category(c)`` returns the value at a base object; ``restrict(u)``
    the functorial reindexing along u, acting on presented cells.
    """

    def category(self, c):
        raise NotImplementedError

    def restrict_obj(self, u, obj):
        raise NotImplementedError

    def restrict_mor(self, u, mor):
        raise NotImplementedError


class ExtIndexedCategory(IndexedCategory):
    def __init__(self, icat, probe):
        self.icat = icat
        self.probe = probe
        self._views = {}

    def category(self, c):
        view = self._views.get(c)
        if view is None:
            view = ExtView(self.icat, c)
            self._views[c] = view
        return view

    def restrict_obj(self, u, obj):
        return self.category(u.tgt).restrict(u, obj)

    def restrict_mor(self, u, mor):
        return self.category(u.tgt).restrict(u, mor)


class TableIndexedCategory(IndexedCategory):
    """Explicit per-object category tables over a finite probe; the dump
    format for golden tests and the general input to the hom computations."""

    def __init__(self, probe, cats, restrictions):
        self.probe = probe
        self.cats = dict(cats)                  # SetObj -> FinCat
        self.restrictions = dict(restrictions)  # SetMor -> FinFunctor

    def category(self, c):
        return self.cats[c]

    def restrict_obj(self, u, obj):
        return self.restrictions[u].on_obj(obj)

    def restrict_mor(self, u, mor):
        return self.restrictions[u].on_mor(mor)


def externalize(x, probe=None):
    """Externalize an internal category over a probe (default policy when
    omitted)."""
    icat = x if isinstance(x, InternalCategory) else InternalCategory(x)
    probe = probe or default_probe(icat.base, icat)
    return ExtIndexedCategory(icat, probe)


# ---------------------------------------------------------------------------
# Internal functors and their enumeration
# ---------------------------------------------------------------------------


class InternalFunctor:
    """A levelwise map of simplicial objects commuting with all operators."""

    def __init__(self, src, tgt, levels):
        self.src = src
        self.tgt = tgt
        self.levels = dict(levels)     # m -> SetMor

    def at(self, m, x):
        return self.levels[m](x)

    def validate(self, elementary_only=True):
        """Naturality for every operator; checking the elementary faces and
        degeneracies suffices because both sides are functorial, but the
        full sweep stays available for certification."""
        from .delta import TruncatedDelta
        x, y = self.src, self.tgt
        for phi in TruncatedDelta(min(x.k, y.k)).all_maps():
            if phi.is_identity:
                continue
            if elementary_only and abs(phi.src - phi.tgt) != 1:
                continue
            f_tgt = self.levels[phi.tgt].mapping
            f_src = self.levels[phi.src].mapping
            x_op, y_op = x.op(phi).mapping, y.op(phi).mapping
            for e in x.levels[phi.tgt].elements:
                assert f_src[x_op[e]] == y_op[f_tgt[e]], \
                    f"naturality fails at {phi.key()}"
        return True

    def key(self):
        return tuple(self.levels[m].table() for m in sorted(self.levels))

    def after(self, other):
        return InternalFunctor(other.src, self.tgt, {
            m: self.levels[m].after(other.levels[m]) for m in self.levels
        })

    def __eq__(self, other):
        return (isinstance(other, InternalFunctor) and self.src is other.src
                and self.tgt is other.tgt and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())


def identity_internal_functor(x):
    return InternalFunctor(x, x, {m: identity_mor(x.levels[m])
                                  for m in range(x.k + 1)})


def internal_functors(x, y, budget=None, y_cat=None, levelwise_bijective=False):
    """All internal functors x -> y, by edge-anchored backtracking.

    Level-0 data is forced along assigned edges; levels 2 and 3 are filled
    through face compatibility and every candidate is validated against all
    operators before being accepted.  With ``levelwise_bijective`` the
    search is pruned to levelwise bijections (isomorphism search).
    """
    k = min(x.k, y.k)
    if levelwise_bijective and \
            any(len(x.levels[m]) != len(y.levels[m]) for m in range(k + 1)):
        return []
    results = []
    s0x, s0y = x.degeneracy(0, 0), y.degeneracy(0, 0)
    sx = {e: x.act(face_inclusion((0,), 1), e) for e in x.levels[1]}
    tx = {e: x.act(face_inclusion((1,), 1), e) for e in x.levels[1]}
    sy = {e: y.act(face_inclusion((0,), 1), e) for e in y.levels[1]}
    ty = {e: y.act(face_inclusion((1,), 1), e) for e in y.levels[1]}
    degenerate_x = set(s0x.mapping.values())
    nondeg = [e for e in x.levels[1].elements if e not in degenerate_x]
    y_by_span, y_by_src, y_by_tgt = {}, {}, {}
    for e in y.levels[1]:
        y_by_span.setdefault((sy[e], ty[e]), []).append(e)
        y_by_src.setdefault(sy[e], []).append(e)
        y_by_tgt.setdefault(ty[e], []).append(e)

    # composition triples of the source: once all three edges of a 2-cell
    # are assigned, the target composite is forced and can prune early
    e01 = face_inclusion((0, 1), 2)
    e12 = face_inclusion((1, 2), 2)
    e02 = face_inclusion((0, 2), 2)
    triples = []
    triples_of_edge = {}
    if y_cat is not None:
        for w in x.levels[2]:
            t = (x.act(e01, w), x.act(e12, w), x.act(e02, w))
            for e in set(t):
                triples_of_edge.setdefault(e, []).append(len(triples))
            triples.append(t)
    y_compose = y_cat.compose_edges if y_cat is not None else None

    # order edges greedily: completing a composition triple prunes hardest,
    # sharing an endpoint with earlier edges prunes next hardest
    ordered, placed = [], set()
    remaining = list(nondeg)
    covered = set()
    while remaining:
        best, best_score = None, None
        for e in remaining:
            tri = sum(
                1 for idx in triples_of_edge.get(e, ())
                if sum(1 for other in triples[idx] if other in placed) == 2
            )
            touch = (sx[e] in covered) + (tx[e] in covered)
            score = (tri, touch)
            if best is None or score > best_score:
                best, best_score = e, score
        remaining.remove(best)
        ordered.append(best)
        placed.add(best)
        covered.update((sx[best], tx[best]))
    nondeg = ordered

    f0, f1 = {}, {}

    def triples_consistent(edge):
        for idx in triples_of_edge.get(edge, ()):
            a, b, c = triples[idx]
            if a in f1 and b in f1 and c in f1:
                if y_compose(f1[a], f1[b]) != f1[c]:
                    return False
        return True

    def level1_consistent(f0full, f1full):
        for v in x.levels[0]:
            if f1full[s0x(v)] != s0y(f0full[v]):
                return False
        for e in x.levels[1]:
            if sy[f1full[e]] != f0full[sx[e]] or ty[f1full[e]] != f0full[tx[e]]:
                return False
        return True

    face_ops = {
        level: [face_inclusion(tuple(j for j in range(level + 1) if j != i),
                               level) for i in range(level + 1)]
        for level in range(2, k + 1)
    }
    y_face_index = {}
    for level in range(2, k + 1):
        idx = {}
        for v in y.levels[level]:
            key = tuple(y.act(fc, v) for fc in face_ops[level])
            idx.setdefault(key, []).append(v)
        y_face_index[level] = idx

    def extend_upwards(f0full, f1full):
        """Fill levels 2..k by matching all faces; branch when the target
        is not determined, validate exhaustively at the end."""
        level_maps = {0: f0full, 1: f1full}

        def fill(level):
            if level > k:
                levels = {
                    m: SetMor(x.levels[m], y.levels[m], level_maps[m])
                    for m in range(k + 1)
                }
                cand = InternalFunctor(x, y, levels)
                try:
                    cand.validate()
                except AssertionError:
                    return
                results.append(cand)
                return
            faces = face_ops[level]
            index = y_face_index[level]
            table = {}
            branch_cells, branch_cands = [], []
            for w in x.levels[level]:
                want = tuple(level_maps[level - 1][x.act(fc, w)] for fc in faces)
                cands = index.get(want)
                if not cands:
                    return
                if len(cands) == 1:
                    table[w] = cands[0]
                else:
                    branch_cells.append(w)
                    branch_cands.append(cands)
            for combo in iproduct(*branch_cands):
                if budget is not None:
                    budget.tick()
                level_maps[level] = {**table, **dict(zip(branch_cells, combo))}
                fill(level + 1)

        fill(2)

    def bijective_on_levels(f):
        return all(f.levels[m].is_bijective for m in range(k + 1))

    def finish():
        free = [v for v in x.levels[0].elements if v not in f0]
        if levelwise_bijective:
            from itertools import permutations
            unused = [w for w in y.levels[0].elements
                      if w not in set(f0.values())]
            if len(unused) != len(free):
                return
            completions = permutations(unused)
        else:
            completions = iproduct(y.levels[0].elements, repeat=len(free))
        for extra in completions:
            f0full = dict(f0)
            f0full.update(zip(free, extra))
            f1full = dict(f1)
            for v in x.levels[0]:
                f1full.setdefault(s0x(v), s0y(f0full[v]))
            if len(f1full) != len(x.levels[1]):
                continue
            if level1_consistent(f0full, f1full):
                extend_upwards(f0full, f1full)

    def rec(i):
        if budget is not None:
            budget.tick()
        if i == len(nondeg):
            finish()
            return
        e = nondeg[i]
        s, t = sx[e], tx[e]
        if s in f0 and t in f0:
            cands = y_by_span.get((f0[s], f0[t]), [])
        elif s in f0:
            cands = y_by_src.get(f0[s], [])
        elif t in f0:
            cands = y_by_tgt.get(f0[t], [])
        else:
            cands = list(y.levels[1])
        if levelwise_bijective:
            used_edges = set(f1.values())
            used_objs = set(f0.values())

            def keeps_injective(ye):
                if ye in used_edges:
                    return False
                if s not in f0 and sy[ye] in used_objs:
                    return False
                if t not in f0 and ty[ye] in used_objs:
                    return False
                if s not in f0 and t not in f0 and s != t \
                        and sy[ye] == ty[ye]:
                    return False
                return True

            cands = [ye for ye in cands if keeps_injective(ye)]
        for ye in cands:
            added = []
            if s not in f0:
                f0[s] = sy[ye]
                added.append(s)
            if t not in f0:
                f0[t] = ty[ye]
                added.append(t)
            f1[e] = ye
            if triples_consistent(e):
                rec(i + 1)
            del f1[e]
            for v in added:
                del f0[v]

    rec(0)
    if levelwise_bijective:
        results[:] = [f for f in results if bijective_on_levels(f)]
    results.sort(key=lambda f: f.key())
    return results


def ext_on_functor(f, probe=None, ext_src=None, ext_tgt=None):
    """Postcomposition family of an internal functor over the probe.

    Returns a callable family: (probe object, cell tuple, level) -> image
    cell tuple, natural over the probe by construction and checked on
    demand by the oracle sweeps.  Rejects data that is not an actual
    internal functor.
    """
    from .errors import AxiomViolation
    try:
        f.validate()
    except AssertionError as exc:
        raise AxiomViolation(f"not an internal functor: {exc}",
                             equation="naturality")

    def family(c, cell, level=0):
        table = f.levels[level]
        return tuple(table(v) for v in cell)

    return family


# ---------------------------------------------------------------------------
# Transformations between externalizations
# ---------------------------------------------------------------------------


class NatFamily:
    """A natural family of functors Ext(X) -> Ext(Y) over the probe,
    generated by its values on the generic cells (the identity of X_0 seen
    as an X_0-indexed object, and of X_1 as an X_1-indexed morphism)."""

    def __init__(self, xcat, ycat, g0, g1):
        self.xcat = xcat
        self.ycat = ycat
        self.g0 = g0        # SetMor X_0 -> Y_0
        self.g1 = g1        # SetMor X_1 -> Y_1

    def on_obj(self, cell):
        return tuple(self.g0(v) for v in cell)

    def on_mor(self, cell):
        return tuple(self.g1(e) for e in cell)

    def key(self):
        return (self.g0.table(), self.g1.table())

    def __eq__(self, other):
        return isinstance(other, NatFamily) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class Modification:
    """A family of natural transformations between two NatFamily values,
    generated by its generic component at X_0."""

    def __init__(self, source, target, h):
        self.source = source
        self.target = target
        self.h = h          # SetMor X_0 -> Y_1

    def component(self, cell):
        return tuple(self.h(v) for v in cell)

    def key(self):
        return (self.source.key(), self.target.key(), self.h.table())


def _pointwise_compose(ycat, a, b):
    """Pointwise composite of maps into Y_1 (a first, then b)."""
    return SetMor(a.src, ycat.level(1), {
        c: ycat.compose_edges(a(c), b(c)) for c in a.src
    })


def nat_families(xcat, ycat, budget=None):
    """Objects of the transformation category between two externalizations.

    A family is determined by its value at the generic cells; candidate
    generic values are enumerated and kept when the three closure
    equations (identities, spans, generic composition) hold, which makes
    every instance a functor at every probe object simultaneously.
    """
    x, y = xcat.x, ycat.x
    families = []
    s0x, s0y = x.degeneracy(0, 0), y.degeneracy(0, 0)
    d_src = face_inclusion((0,), 1)
    d_tgt = face_inclusion((1,), 1)
    e01 = face_inclusion((0, 1), 2)
    e12 = face_inclusion((1, 2), 2)
    e02 = face_inclusion((0, 2), 2)
    y_by_span = {}
    for e in y.levels[1]:
        y_by_span.setdefault((y.act(d_src, e), y.act(d_tgt, e)), []).append(e)

    for g0_vals in iproduct(y.levels[0].elements, repeat=len(x.levels[0])):
        if budget is not None:
            budget.tick()
        g0 = dict(zip(x.levels[0].elements, g0_vals))
        per_edge = []
        ok = True
        for e in x.levels[1]:
            cands = y_by_span.get((g0[x.act(d_src, e)], g0[x.act(d_tgt, e)]), [])
            if e in set(s0x.mapping.values()):
                forced = None
                for v, de in s0x.mapping.items():
                    if de == e:
                        forced = s0y(g0[v])
                        break
                cands = [c for c in cands if c == forced]
            if not cands:
                ok = False
                break
            per_edge.append((e, cands))
        if not ok:
            continue

        def assign(i, g1):
            if budget is not None:
                budget.tick()
            if i == len(per_edge):
                for w in x.levels[2]:
                    first = g1[x.act(e01, w)]
                    second = g1[x.act(e12, w)]
                    composite = ycat.compose_edges(first, second)
                    if composite != g1[x.act(e02, w)]:
                        return
                families.append(NatFamily(
                    xcat, ycat,
                    SetMor(x.levels[0], y.levels[0], g0),
                    SetMor(x.levels[1], y.levels[1], dict(g1)),
                ))
                return
            e, cands = per_edge[i]
            for c in cands:
                g1[e] = c
                assign(i + 1, g1)
                del g1[e]

        assign(0, {})
    families.sort(key=lambda f: f.key())
    return families


def modifications(source, target, budget=None):
    """All modifications between two natural families, via their generic
    component and the generic naturality square."""
    xcat, ycat = source.xcat, source.ycat
    x, y = xcat.x, ycat.x
    d_src = face_inclusion((0,), 1)
    d_tgt = face_inclusion((1,), 1)
    out = []
    per_vertex = []
    for v in x.levels[0]:
        cands = [e for e in y.levels[1]
                 if y.act(d_src, e) == source.g0(v) and y.act(d_tgt, e) == target.g0(v)]
        per_vertex.append((v, cands))

    def assign(i, h):
        if budget is not None:
            budget.tick()
        if i == len(per_vertex):
            hm = SetMor(x.levels[0], y.levels[1], dict(h))
            h_src = hm.after(x.op(d_src))
            h_tgt = hm.after(x.op(d_tgt))
            left = _pointwise_compose(ycat, h_src, target.g1)
            right = _pointwise_compose(ycat, source.g1, h_tgt)
            if left == right:
                out.append(Modification(source, target, hm))
            return
        v, cands = per_vertex[i]
        for c in cands:
            h[v] = c
            assign(i + 1, h)
            del h[v]

    assign(0, {})
    return out


def nat_transformations(e1, e2, budget=None):
    """The finite category of natural transformations and modifications
    between two externalized indexed categories.

    Returns (category, families, modification list).
    """
    xcat, ycat = e1.icat, e2.icat
    families = nat_families(xcat, ycat, budget=budget)
    all_mods, span = [], []
    for i, s in enumerate(families):
        for j, t in enumerate(families):
            for mod in modifications(s, t, budget=budget):
                span.append((i, j))
                all_mods.append(mod)
    index = {(span[i], m.h.table()): i for i, m in enumerate(all_mods)}
    identity = []
    s0y = ycat.x.degeneracy(0, 0)
    for i, fam in enumerate(families):
        ident_h = s0y.after(fam.g0)
        identity.append(index[((i, i), ident_h.table())])
    comp = {}
    for j2, m2 in enumerate(all_mods):
        for j1, m1 in enumerate(all_mods):
            if span[j1][1] == span[j2][0]:
                h = _pointwise_compose(ycat, m1.h, m2.h)
                comp[(j2, j1)] = index[((span[j1][0], span[j2][1]), h.table())]
    cat = FinCat(
        objects=tuple(range(len(families))),
        morphisms=tuple(range(len(all_mods))),
        src=tuple(s for s, _ in span),
        tgt=tuple(t for _, t in span),
        identity=tuple(identity),
        comp=comp,
        name="NatTrans",
    )
    return cat, families, all_mods


def naturality_sweep(e1, e2, families, max_size=2, samples=20):
    """Semantic re-check that generically generated families really are
    natural: exhaustive over probe morphisms between small objects."""
    base = e1.probe.base
    checked = 0
    for s_size in range(min(max_size, e1.probe.max_size) + 1):
        for t_size in range(min(max_size, e1.probe.max_size) + 1):
            c, d = base.range_obj(s_size), base.range_obj(t_size)
            vc, vd = e1.category(c), e1.category(d)
            for u in base.hom_iter(c, d):
                for fam in families:
                    for mor in vd.morphisms():
                        left = tuple(fam.g1(e) for e in vd.restrict(u, mor))
                        right = e2.category(c).restrict(
                            u, tuple(fam.g1(e) for e in mor))
                        if left != right:
                            return False, (u, mor)
                        checked += 1
                        if checked >= samples * max(1, len(families)):
                            return True, checked
    return True, checked


def fully_faithful_check(x, y, probe=None, budget=None, stability=True):
    """Bijections between internal hom data and transformation data.

    Functor side: internal functors x -> y against natural families.
    Transformation side: internal natural transformations (enumerated from
    their generic component, cross-checked elsewhere against the interval
    cotensor) against modifications.
    """
    xcat = x if isinstance(x, InternalCategory) else InternalCategory(x)
    ycat = y if isinstance(y, InternalCategory) else InternalCategory(y)
    probe = probe or default_probe(xcat.base, xcat, ycat)
    e1 = ExtIndexedCategory(xcat, probe)
    e2 = ExtIndexedCategory(ycat, probe)

    functors = internal_functors(xcat.x, ycat.x, budget=budget)
    cat, families, mods = nat_transformations(e1, e2, budget=budget)

    # the comparison: an internal functor generates the postcomposition family
    fam_keys = {f.key(): i for i, f in enumerate(families)}
    functor_to_family = {}
    for i, f in enumerate(functors):
        key = (f.levels[0].table(), f.levels[1].table())
        j = fam_keys.get(key)
        if j is None:
            return FullyFaithfulReport(False, "functor misses a family",
                                       functors, families, mods, None)
        functor_to_family[i] = j
    objects_bijective = (len(functors) == len(families)
                         and len(set(functor_to_family.values())) == len(functors))

    mod_count = len(mods)
    int_nat_count = 0
    pairings = []
    for i, f in enumerate(functors):
        for j, g in enumerate(functors):
            for h in internal_nat_trans_data(xcat, ycat, f, g, budget=budget):
                int_nat_count += 1
                pairings.append((i, j, h.table()))
    mod_keys = {(fam_keys[m.source.key()], fam_keys[m.target.key()],
                 m.h.table()) for m in mods}
    want = {(functor_to_family[i], functor_to_family[j], t)
            for i, j, t in pairings}
    mors_bijective = (int_nat_count == mod_count and want == mod_keys)

    stable = True
    if stability:
        bigger = probe.enlarged()
        e1b = ExtIndexedCategory(xcat, bigger)
        e2b = ExtIndexedCategory(ycat, bigger)
        catb, famb, modb = nat_transformations(e1b, e2b, budget=budget)
        stable = (len(famb) == len(families) and len(modb) == len(mods))
        if not stable:
            raise ProbeTooSmall(
                f"probe of size {probe.max_size} unstable under enlargement"
            )

    ok = objects_bijective and mors_bijective and stable
    return FullyFaithfulReport(ok, None, functors, families, mods,
                               functor_to_family)


class FullyFaithfulReport:
    def __init__(self, ok, reason, functors, families, mods, witness):
        self.ok = ok
        self.reason = reason
        self.functors = functors
        self.families = families
        self.modifications = mods
        self.witness = witness

    def counts(self):
        return {
            "internal_functors": len(self.functors),
            "natural_families": len(self.families),
            "modifications": len(self.modifications),
        }


def internal_nat_trans_data(xcat, ycat, f, g, budget=None):
    """Whisker data of internal natural transformations f => g: maps
    X_0 -> Y_1 with matching spans and the generic naturality square."""
    x, y = xcat.x, ycat.x
    d_src = face_inclusion((0,), 1)
    d_tgt = face_inclusion((1,), 1)
    results = []
    per_vertex = []
    for v in x.levels[0]:
        cands = [e for e in y.levels[1]
                 if y.act(d_src, e) == f.levels[0](v)
                 and y.act(d_tgt, e) == g.levels[0](v)]
        per_vertex.append((v, cands))

    def assign(i, h):
        if budget is not None:
            budget.tick()
        if i == len(per_vertex):
            hm = SetMor(x.levels[0], y.levels[1], dict(h))
            left = _pointwise_compose(ycat, hm.after(x.op(d_src)), g.levels[1])
            right = _pointwise_compose(ycat, f.levels[1], hm.after(x.op(d_tgt)))
            if left == right:
                results.append(hm)
            return
        v, cands = per_vertex[i]
        for c in cands:
            h[v] = c
            assign(i + 1, h)
            del h[v]

    assign(0, {})
    return results
