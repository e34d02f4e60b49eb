"""The totalization of an indexed category along an internal one, its
bijection with transformation families, and the pointwise Kan-extension
comparison.

The totalization is the end category of n |-> Fun([n], F(X_n)) over the
truncation: an object is a tuple of chains, one per rank, subject to the
wedge equations

    push(phi, chain at rank phi.src) == (chain at rank phi.tgt) . phi

for every monotone phi, where push is the indexed restriction along the
operator X(phi) and the right side precomposes with phi viewed as a
functor of linear orders.  Tuples are generated by their rank-1 chain
(objects) and their rank-0 component (morphisms); every wedge equation is
then checked exhaustively, so the generation step is a search strategy,
not an assumption.
"""

from .delta import MonotoneMap, TruncatedDelta, codegeneracy, face_inclusion, vertex
from .errors import ColimitNotFinite
from .externalize import ExtIndexedCategory, NatFamily, default_probe
from .fincat import FinCat, FinFunctor, SetMor, chain_cat
from .internal import InternalCategory


class Chain:
    """A functor from a finite linear order into a probed category value,
    stored as its composable edge list (empty for rank 0)."""

    __slots__ = ("view", "n", "edges", "vertex0")

    def __init__(self, view, n, edges, vertex0):
        self.view = view
        self.n = n
        self.edges = tuple(edges)
        self.vertex0 = vertex0

    def vertices(self):
        out = [self.vertex0]
        for e in self.edges:
            out.append(self.view.tgt(e))
        return out

    def edge(self, i, j):
        if i == j:
            return self.view.ident(self.vertices()[i])
        m = self.edges[i]
        for t in range(i + 1, j):
            m = self.view.compose(self.edges[t], m)
        return m

    def precompose(self, phi):
        """The phi.src-chain obtained by reindexing along phi into [n]."""
        verts = self.vertices()
        edges = [self.edge(phi(i), phi(i + 1)) for i in range(phi.src)]
        return Chain(self.view, phi.src, edges, verts[phi(0)])

    def key(self):
        return (self.n, self.vertex0, self.edges)


class Totalization:
    """The assembled end category with its decoding tables."""

    def __init__(self, category, objects, morphisms):
        self.category = category
        self.objects = objects        # list of dict rank -> Chain
        self.morphisms = morphisms    # list of (src, tgt, generic component)

    def size(self):
        return (len(self.objects), len(self.morphisms))


def totalization(f_indexed, x, k=None, budget=None):
    """The end category of n |-> Fun([n], F(X_n)) over ranks <= k."""
    xcat = x if isinstance(x, InternalCategory) else InternalCategory(x)
    xobj = xcat.x
    k = xobj.k if k is None else min(k, xobj.k)
    views = {n: f_indexed.category(xobj.levels[n]) for n in range(k + 1)}
    delta = TruncatedDelta(k)

    def push(phi, chain):
        """Indexed restriction along the operator X(phi), sending chains at
        rank phi.src to chains at rank phi.tgt."""
        u = xobj.op(phi)          # base morphism X_{phi.tgt} -> X_{phi.src}
        src_view = views[phi.src]
        edges = [src_view.restrict(u, e) for e in chain.edges]
        v0 = src_view.restrict(u, chain.vertex0)
        return Chain(views[phi.tgt], chain.n, edges, v0)

    def wedges_hold(tup):
        for phi in delta.all_maps():
            if phi.is_identity:
                continue
            pushed = push(phi, tup[phi.src])
            reindexed = tup[phi.tgt].precompose(phi)
            if pushed.key() != reindexed.key():
                return False
        return True

    consecutive = {n: [face_inclusion((i, i + 1), n) for i in range(n)]
                   for n in range(2, k + 1)}
    objects = []
    view1 = views[1]
    for m1 in view1.morphisms():
        if budget is not None:
            budget.tick()
        chain1 = Chain(view1, 1, [m1], view1.src(m1))
        collapsed = push(codegeneracy(0, 0), chain1)
        tup = {0: Chain(views[0], 0, [], collapsed.vertex0), 1: chain1}
        ok = True
        for n in range(2, k + 1):
            edges = [push(op, chain1).edges[0] for op in consecutive[n]]
            for i in range(n - 1):
                if views[n].tgt(edges[i]) != views[n].src(edges[i + 1]):
                    ok = False
                    break
            if not ok:
                break
            tup[n] = Chain(views[n], n, edges, views[n].src(edges[0]))
        if ok and wedges_hold(tup):
            objects.append(tup)

    obj_index = {tuple(tup[n].key() for n in range(k + 1)): i
                 for i, tup in enumerate(objects)}
    vert_maps = {n: [vertex(n, i) for i in range(n + 1)] for n in range(k + 1)}

    def components_from(generic):
        """All chain-transformation components derived from a generic
        rank-0 component, as rank -> tuple of view morphisms."""
        comp0 = Chain(views[0], 1, [generic], views[0].src(generic))
        out = {}
        for n in range(k + 1):
            out[n] = tuple(push(vert_maps[n][i], comp0).edges[0]
                           for i in range(n + 1))
        return out

    morphisms = []
    for i, tup_s in enumerate(objects):
        for j, tup_t in enumerate(objects):
            for generic in views[0].hom(tup_s[0].vertex0, tup_t[0].vertex0):
                if budget is not None:
                    budget.tick()
                comps = components_from(generic)
                natural = True
                for n in range(k + 1):
                    cs, ct = tup_s[n], tup_t[n]
                    for e in range(n):
                        left = views[n].compose(comps[n][e + 1], cs.edges[e])
                        right = views[n].compose(ct.edges[e], comps[n][e])
                        if left != right:
                            natural = False
                            break
                    if not natural:
                        break
                if not natural:
                    continue
                consistent = True
                for phi in delta.all_maps():
                    if phi.is_identity:
                        continue
                    # wedge on components: pushing the rank phi.src
                    # components along X(phi) must match reindexing the
                    # rank phi.tgt components along phi
                    u = xobj.op(phi)
                    pushed = tuple(views[phi.src].restrict(u, comp)
                                   for comp in comps[phi.src])
                    reindexed = tuple(comps[phi.tgt][phi(i)]
                                      for i in range(phi.src + 1))
                    if pushed != reindexed:
                        consistent = False
                        break
                if consistent:
                    morphisms.append((i, j, generic))

    mor_index = {m: idx for idx, m in enumerate(morphisms)}
    identity_tbl = []
    for i, tup in enumerate(objects):
        ident = views[0].ident(tup[0].vertex0)
        identity_tbl.append(mor_index[(i, i, ident)])
    comp = {}
    for a, (i1, j1, g1) in enumerate(morphisms):
        for b, (i2, j2, g2) in enumerate(morphisms):
            if j1 == i2:
                comp[(b, a)] = mor_index[(i1, j2, views[0].compose(g2, g1))]
    category = FinCat(
        objects=tuple(range(len(objects))),
        morphisms=tuple(range(len(morphisms))),
        src=tuple(i for i, _, _ in morphisms),
        tgt=tuple(j for _, j, _ in morphisms),
        identity=tuple(identity_tbl),
        comp=comp,
        name=f"Tot({xobj.name})",
    )
    return Totalization(category, objects, morphisms)


# ---------------------------------------------------------------------------
# The generation bijection
# ---------------------------------------------------------------------------


def generic_chain(xcat, n, probe_view):
    """The generic n-chain of an externalized category at its own level n:
    vertices are the vertex operators, edges the consecutive-edge
    operators, all evaluated on the identity of X_n."""
    xobj = xcat.x
    cells = xobj.levels[n].elements
    verts = [tuple(xobj.act(vertex(n, i), c) for c in cells)
             for i in range(n + 1)]
    edges = [tuple(xobj.act(face_inclusion((i, i + 1), n), c) for c in cells)
             for i in range(n)]
    return Chain(probe_view, n, edges, verts[0])


def yoneda_bijection(f_indexed, x, ycat=None, families=None, budget=None):
    """Mutually inverse maps between natural families into an externalized
    target and totalization objects.

    Forward: evaluate a family on the generic chains.  Backward: read the
    generic values straight off the rank-0 and rank-1 chains.  Returns the
    two maps together with the round-trip verification.
    """
    from .externalize import nat_families

    xcat = x if isinstance(x, InternalCategory) else InternalCategory(x)
    xobj = xcat.x
    k = xobj.k
    ycat = ycat or f_indexed.icat
    if families is None:
        families = nat_families(xcat, ycat, budget=budget)
    tot = totalization(f_indexed, xcat, budget=budget)

    def forward(fam):
        tup = {}
        for n in range(k + 1):
            view = f_indexed.category(xobj.levels[n])
            gen = generic_chain(xcat, n, view)
            edges = [tuple(fam.g1(e) for e in edge) for edge in gen.edges]
            v0 = tuple(fam.g0(v) for v in gen.vertex0)
            tup[n] = Chain(view, n, edges, v0)
        return tup

    def backward(tup):
        g0 = dict(zip(xobj.levels[0].elements, tup[0].vertex0))
        g1 = dict(zip(xobj.levels[1].elements, tup[1].edges[0]))
        return NatFamily(xcat, ycat,
                         SetMor(xobj.levels[0], ycat.x.levels[0], g0),
                         SetMor(xobj.levels[1], ycat.x.levels[1], g1))

    tot_keys = {tuple(tup[n].key() for n in range(k + 1)): i
                for i, tup in enumerate(tot.objects)}
    fam_keys = {fam.key(): i for i, fam in enumerate(families)}

    round_trip_ok = True
    forward_table = {}
    for i, fam in enumerate(families):
        tup = forward(fam)
        key = tuple(tup[n].key() for n in range(k + 1))
        j = tot_keys.get(key)
        if j is None or backward(tot.objects[j]).key() != fam.key():
            round_trip_ok = False
            break
        forward_table[i] = j
    if round_trip_ok:
        for j, tup in enumerate(tot.objects):
            fam = backward(tup)
            i = fam_keys.get(fam.key())
            if i is None or forward_table.get(i) != j:
                round_trip_ok = False
                break
    bijective = round_trip_ok and len(families) == len(tot.objects)
    return YonedaReport(bijective, families, tot, forward, backward)


class YonedaReport:
    def __init__(self, ok, families, tot, forward, backward):
        self.ok = ok
        self.families = families
        self.totalization = tot
        self.forward = forward
        self.backward = backward

    def counts(self):
        return {
            "families": len(self.families),
            "totalization_objects": len(self.totalization.objects),
            "totalization_morphisms": len(self.totalization.morphisms),
        }


# ---------------------------------------------------------------------------
# Colimits of finite categories and the Kan comparison
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        p = self.parent.setdefault(a, a)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        self.parent[a] = p
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            return True
        return False


def cat_colimit(cats, links, budget=None):
    """Colimit of a finite diagram of finite categories by generators and
    relations.

    ``links`` is a list of (source index, target index, FinFunctor).  The
    construction unites object and morphism atoms along the links, then
    closes composition using witnesses inside single categories, merging
    classes whenever two witnesses disagree.  If some composable pair never
    acquires a witness the quotient would need free words; that case is
    reported as ColimitNotFinite rather than approximated.
    """
    ouf, muf = _UnionFind(), _UnionFind()
    for a, cat in enumerate(cats):
        for o in range(cat.n_objects):
            ouf.find((a, o))
        for m in range(cat.n_morphisms):
            muf.find((a, m))
    for a, b, f in links:
        for o in range(cats[a].n_objects):
            ouf.union((a, o), (b, f.obj_map[o]))
        for m in range(cats[a].n_morphisms):
            muf.union((a, m), (b, f.mor_map[m]))

    while True:
        changed = False
        mor_classes = {}
        for a, cat in enumerate(cats):
            for m in range(cat.n_morphisms):
                mor_classes.setdefault(muf.find((a, m)), []).append((a, m))
        class_src = {}
        class_tgt = {}
        for rep, atoms in mor_classes.items():
            a, m = atoms[0]
            class_src[rep] = ouf.find((a, cats[a].src[m]))
            class_tgt[rep] = ouf.find((a, cats[a].tgt[m]))
            for a2, m2 in atoms[1:]:
                if ouf.find((a2, cats[a2].src[m2])) != class_src[rep] or \
                        ouf.find((a2, cats[a2].tgt[m2])) != class_tgt[rep]:
                    raise ColimitNotFinite("class endpoints disagree")

        comp = {}
        for r1, atoms1 in mor_classes.items():
            for r2, atoms2 in mor_classes.items():
                if class_tgt[r1] != class_src[r2]:
                    continue
                if budget is not None:
                    budget.tick()
                by_cat = {}
                for a, m in atoms1:
                    by_cat.setdefault(a, ([], []))[0].append(m)
                for a, m in atoms2:
                    by_cat.setdefault(a, ([], []))[1].append(m)
                witness = None
                for a, (first, second) in by_cat.items():
                    for m1 in first:
                        for m2 in second:
                            if cats[a].tgt[m1] == cats[a].src[m2]:
                                w = muf.find((a, cats[a].compose(m2, m1)))
                                if witness is None:
                                    witness = w
                                elif witness != w:
                                    if muf.union(witness, w):
                                        changed = True
                                    witness = muf.find(w)
                if witness is None:
                    raise ColimitNotFinite(
                        "composable pair without a one-category witness"
                    )
                comp[(r2, r1)] = witness
        if not changed:
            break

    obj_reps = sorted({ouf.find((a, o)) for a, cat in enumerate(cats)
                       for o in range(cat.n_objects)})
    mor_reps = sorted(mor_classes)
    obj_pos = {r: i for i, r in enumerate(obj_reps)}
    mor_pos = {r: i for i, r in enumerate(mor_reps)}
    identity_tbl = [None] * len(obj_reps)
    for a, cat in enumerate(cats):
        for o in range(cat.n_objects):
            identity_tbl[obj_pos[ouf.find((a, o))]] = \
                mor_pos[muf.find((a, cat.identity[o]))]
    out = FinCat(
        objects=tuple(obj_reps),
        morphisms=tuple(mor_reps),
        src=tuple(obj_pos[class_src[r]] for r in mor_reps),
        tgt=tuple(obj_pos[class_tgt[r]] for r in mor_reps),
        identity=tuple(identity_tbl),
        comp={(mor_pos[g], mor_pos[f]): mor_pos[h]
              for (g, f), h in comp.items()},
        name="colim",
    )
    out.validate()
    return out, ouf, muf, obj_pos, mor_pos


def left_kan_check(x, probe_objects=None, budget=None, max_probe_size=2):
    """Compare the pointwise comma-category colimit of the linear-order
    diagram against the externalized value, at each probe object.

    The comparison functor sends the class of (rank n map g, vertex i) to
    the vertex operator composed with g, and edge generators likewise; the
    check demands it be well defined, functorial and bijective.  Instances
    whose colimit does not close finitely are reported as skipped, never
    passed.
    """
    xcat = x if isinstance(x, InternalCategory) else InternalCategory(x)
    xobj = xcat.x
    base = xcat.base
    k = xobj.k
    if probe_objects is None:
        probe_objects = [base.range_obj(s) for s in range(max_probe_size + 1)]
    results = {}
    for c in probe_objects:
        try:
            results[c.name] = _kan_at_probe(xcat, c, budget=budget)
        except ColimitNotFinite as exc:
            results[c.name] = {"status": "skipped", "reason": str(exc)}
    agreed = [r for r in results.values() if r.get("status") == "agree"]
    disagreed = [r for r in results.values() if r.get("status") == "disagree"]
    return {
        "per_probe": results,
        "agree": len(disagreed) == 0 and len(agreed) > 0,
        "skipped": sum(1 for r in results.values()
                       if r.get("status") == "skipped"),
        "checked": len(results),
    }


def _kan_at_probe(xcat, c, budget=None):
    from itertools import product as iproduct

    from .externalize import ExtView

    xobj = xcat.x
    k = xobj.k
    cells = {n: [tuple(t) for t in
                 iproduct(xobj.levels[n].elements, repeat=len(c))]
             for n in range(k + 1)}
    comma_objects = [(n, g) for n in range(k + 1) for g in cells[n]]
    obj_of = {o: i for i, o in enumerate(comma_objects)}
    cats = [chain_cat(n) for n, _ in comma_objects]
    links = []
    chain_cache = {n: chain_cat(n) for n in range(k + 1)}
    for phi in TruncatedDelta(k).all_maps():
        if phi.is_identity:
            continue
        # phi : [n] -> [n'] links (n, X(phi) . g') -> (n', g')
        n, n2 = phi.src, phi.tgt
        for g2 in cells[n2]:
            g = tuple(xobj.act(phi, v) for v in g2)
            f = _chain_functor(chain_cache[n], chain_cache[n2], phi)
            links.append((obj_of[(n, g)], obj_of[(n2, g2)], f))
    colim, ouf, muf, obj_pos, mor_pos = cat_colimit(cats, links, budget=budget)

    view = ExtView(xcat, c)
    # canonical comparison on object atoms
    obj_image = {}
    for idx, (n, g) in enumerate(comma_objects):
        for i in range(n + 1):
            img = tuple(xobj.act(vertex(n, i), v) for v in g)
            rep = obj_pos[ouf.find((idx, i))]
            if obj_image.setdefault(rep, img) != img:
                return {"status": "disagree", "reason": "object comparison"}
    mor_image = {}
    for idx, (n, g) in enumerate(comma_objects):
        cat = cats[idx]
        for m in range(cat.n_morphisms):
            a, b = cat.objects[cat.src[m]], cat.objects[cat.tgt[m]]
            if a == b:
                img = view.ident(tuple(xobj.act(vertex(n, a), v) for v in g))
            else:
                img = tuple(xobj.act(face_inclusion((a, b), n), v) for v in g)
            rep = mor_pos[muf.find((idx, m))]
            if mor_image.setdefault(rep, img) != img:
                return {"status": "disagree", "reason": "morphism comparison"}

    ext_objects = set(view.objects())
    ext_morphisms = set(view.morphisms())
    obj_bij = (len(obj_image) == len(ext_objects)
               and set(obj_image.values()) == ext_objects)
    mor_bij = (len(mor_image) == len(ext_morphisms)
               and set(mor_image.values()) == ext_morphisms)
    functorial = True
    for (g2, g1), h in list(colim._comp.items())[:]:
        left = view.compose(mor_image[colim.morphisms[g2]],
                            mor_image[colim.morphisms[g1]])
        if left != mor_image[colim.morphisms[h]]:
            functorial = False
            break
    status = "agree" if (obj_bij and mor_bij and functorial) else "disagree"
    return {
        "status": status,
        "colimit_objects": colim.n_objects,
        "colimit_morphisms": colim.n_morphisms,
        "external_objects": len(ext_objects),
        "external_morphisms": len(ext_morphisms),
    }


def _chain_functor(src_cat, tgt_cat, phi):
    """phi : [n] -> [n'] as a functor of chain categories."""
    obj_map = tuple(phi(i) for i in range(phi.src + 1))
    mor_map = []
    for m in range(src_cat.n_morphisms):
        a, b = src_cat.objects[src_cat.src[m]], src_cat.objects[src_cat.tgt[m]]
        label = f"{phi(a)}<={phi(b)}"
        mor_map.append(tgt_cat.morphisms.index(label))
    return FinFunctor(src_cat, tgt_cat, obj_map, mor_map)