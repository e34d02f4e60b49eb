"""Truncated simplicial sets and the standard shapes used as weights.

A TruncSSet stores level sets up to a truncation k together with the action
of every monotone map between ranks <= k.  Shape constructors cover the
standard simplices, spines, boundaries, nerves, binary products, and the
biinvertible-arrow weight obtained from the 3-simplex by collapsing its two
witness edges.  Mapping sets between truncated simplicial sets are found by
the same matching-family search that backs limits in the finite-set base.
"""

from .delta import MonotoneMap, TruncatedDelta, codegeneracy, enumerate_monotone
from .errors import Unrepresentable
from .fincat import (FinCat, FinSetBase, SetDiagram, SetMor, SetObj,
                     _matching_families, poset_cat)


class TruncSSet:
    """A functor (truncated simplex category)^op -> Set, as explicit tables."""

    def __init__(self, k, levels, action, coskeletal=True, name=""):
        self.k = k
        self.levels = {m: tuple(levels[m]) for m in range(k + 1)}
        self._action = dict(action)    # (MonotoneMap, simplex) -> simplex
        self.coskeletal = coskeletal
        self.name = name

    def level(self, m):
        return self.levels[m]

    def act(self, phi, x):
        """The simplex x . phi, for phi : [m] -> [n] and x at level n."""
        if phi.is_identity:
            return x
        return self._action[(phi, x)]

    def size(self, m):
        return len(self.levels[m])

    def cells(self):
        for m in range(self.k + 1):
            for x in self.levels[m]:
                yield (m, x)

    def cache_key(self):
        return (self.name, self.k)

    def validate(self):
        """Exhaustive simplicial identities within the truncation."""
        delta = TruncatedDelta(self.k)
        for phi in delta.all_maps():
            for x in self.levels[phi.tgt]:
                assert self.act(phi, x) in set(self.levels[phi.src]), \
                    f"action of {phi.key()} leaves the level set"
        for g, f in delta.composable_pairs():
            gf = g.after(f)
            for x in self.levels[g.tgt]:
                assert self.act(gf, x) == self.act(f, self.act(g, x)), \
                    f"simplicial identity fails at {g.key()} . {f.key()}"
        return True

    def __repr__(self):
        sizes = tuple(self.size(m) for m in range(self.k + 1))
        return f"TruncSSet({self.name!r}, levels {sizes})"


def _close_action(k, levels):
    """Action table by precomposition, for levels whose simplices are
    themselves monotone maps (subobjects of standard simplices)."""
    action = {}
    delta = TruncatedDelta(k)
    for phi in delta.all_maps():
        for x in levels[phi.tgt]:
            action[(phi, x)] = x.after(phi)
    return action


def standard_simplex(n, k=3):
    """The n-simplex truncated at level k; simplices are monotone maps into [n]."""
    levels = {m: enumerate_monotone(m, n) for m in range(k + 1)}
    return TruncSSet(k, levels, _close_action(k, levels), name=f"delta{n}")


def spine(n, k=3):
    """The chain of the n consecutive edges of the n-simplex."""
    def in_spine(x):
        return max(x.values) - min(x.values) <= 1

    levels = {m: tuple(x for x in enumerate_monotone(m, n) if in_spine(x))
              for m in range(k + 1)}
    return TruncSSet(k, levels, _close_action(k, levels), name=f"spine{n}")


def boundary(n, k=3):
    """The boundary of the n-simplex: all non-surjective simplices."""
    levels = {m: tuple(x for x in enumerate_monotone(m, n) if not x.is_surjective)
              for m in range(k + 1)}
    return TruncSSet(k, levels, _close_action(k, levels), name=f"boundary{n}")


def product_sset(a, b, name=None):
    """Levelwise binary product; coskeletal policy is the min of the factors'."""
    assert a.k == b.k, "product factors must share a truncation level"
    k = a.k
    levels = {m: tuple((x, y) for x in a.level(m) for y in b.level(m))
              for m in range(k + 1)}
    action = {}
    delta = TruncatedDelta(k)
    for phi in delta.all_maps():
        for (x, y) in levels[phi.tgt]:
            action[(phi, (x, y))] = (a.act(phi, x), b.act(phi, y))
    return TruncSSet(k, levels, action,
                     coskeletal=a.coskeletal and b.coskeletal,
                     name=name or f"({a.name}x{b.name})")


def nerve_sset(cat, k=3):
    """The nerve of a finite category: level m is the set of m-chains.

    Vertices are tagged ("ob", object index); higher simplices are tagged
    ("ch", tuple of composable morphism indices), first arrow first.
    """
    levels = {0: tuple(("ob", a) for a in range(cat.n_objects))}
    chains = [(f,) for f in range(cat.n_morphisms)]
    levels[1] = tuple(("ch", c) for c in chains)
    for m in range(2, k + 1):
        chains = [c + (g,) for c in chains for g in cat.out_of(cat.tgt[c[-1]])]
        levels[m] = tuple(("ch", c) for c in chains)

    def vertex_of(chain, i):
        return cat.src[chain[i]] if i < len(chain) else cat.tgt[chain[-1]]

    def segment(chain, lo, hi):
        if lo == hi:
            return cat.identity[vertex_of(chain, lo)]
        m = chain[lo]
        for i in range(lo + 1, hi):
            m = cat.compose(chain[i], m)
        return m

    action = {}
    delta = TruncatedDelta(k)
    for phi in delta.all_maps():
        m, n = phi.src, phi.tgt
        for x in levels[n]:
            if n == 0:
                action[(phi, x)] = ("ch", (cat.identity[x[1]],) * m)
            elif m == 0:
                action[(phi, x)] = ("ob", vertex_of(x[1], phi.values[0]))
            else:
                chain = x[1]
                new = tuple(segment(chain, phi.values[i], phi.values[i + 1])
                            for i in range(m))
                action[(phi, x)] = ("ch", new)
    return TruncSSet(k, levels, action, name=f"N({cat.name})")


def collapse_edges(sset, edges, name=None):
    """Quotient collapsing each listed edge (and nothing else) to a point.

    The collapsed edges must be pairwise vertex-disjoint, so the identified
    simplices are exactly those all of whose vertices lie on one edge."""
    k = sset.k
    edge_vertices = []
    for e in edges:
        v0 = sset.act(MonotoneMap(0, 1, (0,)), e)
        v1 = sset.act(MonotoneMap(0, 1, (1,)), e)
        edge_vertices.append(frozenset((v0, v1)))
    for i, a in enumerate(edge_vertices):
        for b in edge_vertices[i + 1:]:
            assert not (a & b), "collapsed edges must be vertex-disjoint"

    def canon(m, x):
        verts = {sset.act(MonotoneMap(0, m, (i,)), x) for i in range(m + 1)}
        for i, vs in enumerate(edge_vertices):
            if verts <= vs:
                return ("pt", i)
        return ("s", x)

    levels, rep_at = {}, {}
    for m in range(k + 1):
        out = []
        for x in sset.level(m):
            c = canon(m, x)
            if (m, c) not in rep_at:
                rep_at[(m, c)] = x
                out.append(c)
        levels[m] = tuple(out)

    action = {}
    delta = TruncatedDelta(k)
    for phi in delta.all_maps():
        m, n = phi.src, phi.tgt
        for c in levels[n]:
            action[(phi, c)] = canon(m, sset.act(phi, rep_at[(n, c)]))
    return TruncSSet(k, levels, action, coskeletal=sset.coskeletal,
                     name=name or f"{sset.name}/edges")


def biinvertible_weight(k=3):
    """The 3-simplex with its (0,2) and (1,3) edges collapsed.

    Natural maps out of it into a simplicial object pick out the arrows
    equipped with a left and a right inverse; it is the weight computing the
    object of internal equivalences.
    """
    d3 = standard_simplex(3, k)
    return collapse_edges(
        d3, [MonotoneMap(1, 3, (0, 2)), MonotoneMap(1, 3, (1, 3))], name="biinv"
    )


def zigzag_weight(k=3):
    """Nerve of the free zig-zag 0 -> 2 <- 1 -> 3."""
    leq_pairs = {(0, 0), (1, 1), (2, 2), (3, 3), (0, 2), (1, 2), (1, 3)}
    zz = poset_cat((0, 1, 2, 3), lambda a, b: (a, b) in leq_pairs, name="zigzag")
    return nerve_sset(zz, k)


# ---------------------------------------------------------------------------
# Categories of elements of weights, and simplicial mapping sets
# ---------------------------------------------------------------------------


def element_shape(w, elementary_only=False):
    """The opposite of the category of elements of a weight, as a FinCat.

    Objects are the cells (rank, simplex); an arrow (n, x) -> (m, x . phi)
    is recorded for every phi : [m] -> [n].  Composition is rule-based so
    large element categories stay cheap; a conical limit over this shape is
    the weighted limit.

    With ``elementary_only`` the arrows are restricted to single faces and
    degeneracies (plus identities): matching families over the restricted
    graph coincide with those over the full one because every operator
    factors through elementary ones and the diagram values are functorial.
    The full graph remains the oracle's reference.
    """
    cells = list(w.cells())
    index = {c: i for i, c in enumerate(cells)}
    delta = TruncatedDelta(w.k)
    morphisms, src, tgt = [], [], []
    identity = [None] * len(cells)
    for phi in delta.all_maps():
        if elementary_only and not phi.is_identity \
                and abs(phi.src - phi.tgt) != 1:
            continue
        for x in w.level(phi.tgt):
            j = len(morphisms)
            morphisms.append((phi, x))
            src.append(index[(phi.tgt, x)])
            tgt.append(index[(phi.src, w.act(phi, x))])
            if phi.is_identity:
                identity[index[(phi.tgt, x)]] = j
    mor_index = {mo: i for i, mo in enumerate(morphisms)}

    def compose_rule(g, f):
        phi2, _ = morphisms[g]       # f : (n,x) -> (m,_), g : (m,_) -> (l,_)
        phi1, x1 = morphisms[f]
        return mor_index[(phi1.after(phi2), x1)]

    shape = FinCat(
        objects=tuple(cells),
        morphisms=tuple(range(len(morphisms))),
        src=tuple(src),
        tgt=tuple(tgt),
        identity=tuple(identity),
        comp={},
        compose_rule=compose_rule,
        name=f"El({w.name})^op",
    )
    return shape, cells, morphisms


def sset_hom(a, b, budget=None):
    """All simplicial maps a -> b between equal-truncation simplicial sets.

    For a source presented by a GroupoidPresentation the maps are computed
    as functors out of the free groupoid instead (chains of invertible
    edges); the free-groupoid nerve itself is never materialised.
    """
    if isinstance(a, GroupoidPresentation):
        return _maps_from_free_groupoid(a, b, budget=budget)
    assert a.k == b.k, "mapping sets need a common truncation"
    shape, cells, morphisms = element_shape(a)
    base = FinSetBase(bound=10 ** 9)
    obs = {i: SetObj(f"{b.name}_{m}", b.level(m)) for i, (m, _) in enumerate(cells)}
    mors = {}
    for j in range(shape.n_morphisms):
        phi, _ = morphisms[j]
        if phi.is_identity:
            continue
        s, t = shape.src[j], shape.tgt[j]
        mors[j] = SetMor(obs[s], obs[t], {y: b.act(phi, y) for y in obs[s]})
    diagram = SetDiagram(shape, obs, mors, base=base)
    maps = []
    for fam in sorted(
        _matching_families(diagram, budget=budget),
        key=lambda fam: tuple(obs[j].index(fam[j]) for j in range(len(cells))),
    ):
        tables = {m: {} for m in range(a.k + 1)}
        for idx, (m, x) in enumerate(cells):
            tables[m][x] = fam[idx]
        maps.append(SMap(a, b, tables))
    return maps


class SMap:
    """A map of truncated simplicial sets, as levelwise tables."""

    def __init__(self, src, tgt, tables):
        self.src = src
        self.tgt = tgt
        self.tables = {m: dict(tables[m]) for m in tables}

    def at(self, m, x):
        return self.tables[m][x]

    def key(self):
        return tuple(
            tuple(self.tables[m][x] for x in self.src.level(m))
            for m in range(self.src.k + 1)
        )

    def validate(self):
        delta = TruncatedDelta(self.src.k)
        for phi in delta.all_maps():
            for x in self.src.level(phi.tgt):
                assert self.at(phi.src, self.src.act(phi, x)) == \
                    self.tgt.act(phi, self.at(phi.tgt, x)), \
                    f"simplicial map breaks naturality at {phi.key()}"
        return True

    def __eq__(self, other):
        return (isinstance(other, SMap) and self.src is other.src
                and self.tgt is other.tgt and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())


def sub_sset_inclusion(sub, whole, embed=None):
    """Inclusion SMap for a subobject built by filtering levels."""
    embed = embed or (lambda m, x: x)
    tables = {m: {x: embed(m, x) for x in sub.level(m)} for m in range(sub.k + 1)}
    return SMap(sub, whole, tables)


class GroupoidPresentation:
    """Stand-in for the nerve of the free groupoid on the chain 0-1-...-n.

    These nerves are infinite dimensional, so they are never materialised;
    mapping sets out of them are computed as functors from the free
    groupoid, i.e. chains of invertible arrows of the target.
    """

    def __init__(self, n):
        self.n = n

    def __repr__(self):
        return f"GroupoidPresentation(I[{self.n}])"


def _nerve_edge_calculus(b):
    """Source, target, identity and binary composition of edges of a nerve."""
    d0 = MonotoneMap(0, 1, (1,))
    d1 = MonotoneMap(0, 1, (0,))
    s0 = codegeneracy(0, 0)
    fillers = {}
    for w in b.level(2):
        pair = (b.act(MonotoneMap(1, 2, (0, 1)), w),
                b.act(MonotoneMap(1, 2, (1, 2)), w))
        fillers[pair] = b.act(MonotoneMap(1, 2, (0, 2)), w)

    def compose_edges(e, f):
        out = fillers.get((e, f))
        if out is None:
            raise Unrepresentable("target has no unique 2-chain fillers")
        return out

    return (lambda e: b.act(d1, e)), (lambda e: b.act(d0, e)), \
           (lambda v: b.act(s0, v)), compose_edges


def invertible_edges(b):
    """Edges of a nerve admitting a two-sided inverse edge."""
    src_of, tgt_of, ident, compose_edges = _nerve_edge_calculus(b)
    out = []
    for e in b.level(1):
        for f in b.level(1):
            if src_of(f) == tgt_of(e) and tgt_of(f) == src_of(e):
                if compose_edges(e, f) == ident(src_of(e)) and \
                        compose_edges(f, e) == ident(tgt_of(e)):
                    out.append(e)
                    break
    return out


def _iso_chains(b, n):
    """Chains of n composable invertible edges of a nerve."""
    src_of, tgt_of, _, _ = _nerve_edge_calculus(b)
    iso = invertible_edges(b)
    if n == 0:
        return [(v,) for v in b.level(0)]
    chains = [(e,) for e in iso]
    for _ in range(n - 1):
        chains = [c + (e,) for c in chains for e in iso if src_of(e) == tgt_of(c[-1])]
    return chains


def _maps_from_free_groupoid(pres, b, budget=None):
    if not b.name.startswith("N("):
        raise Unrepresentable("maps out of a free-groupoid nerve need a nerve target")
    chains = _iso_chains(b, pres.n)
    if budget is not None:
        budget.tick(len(chains))
    return chains


def _chain_to_simplex(b, chain, m):
    """The m-simplex of a nerve whose consecutive edges are `chain`."""
    if m == 0:
        return chain[0]
    if m == 1:
        return chain[0]
    edge_ops = [MonotoneMap(1, m, (i, i + 1)) for i in range(m)]
    for x in b.level(m):
        if all(b.act(edge_ops[i], x) == chain[i] for i in range(m)):
            return x
    raise Unrepresentable("chain has no filler; target is not a nerve")


def k_core(s, k=None):
    """The maximal subobject of invertible cells of a nerve.

    Level n is the set of maps out of the free-groupoid nerve on the chain
    of length n, i.e. chains of n composable invertible edges; on nerves
    this is the nerve of the maximal subgroupoid.
    """
    if not s.name.startswith("N("):
        raise Unrepresentable("the invertible-cell core is computed on nerves")
    k = s.k if k is None else k
    converted = {0: tuple(s.level(0))}
    for m in range(1, k + 1):
        converted[m] = tuple(dict.fromkeys(
            _chain_to_simplex(s, c, m) for c in _iso_chains(s, m)
        ))
    conv_sets = {m: set(converted[m]) for m in range(k + 1)}
    action = {}
    delta = TruncatedDelta(k)
    for phi in delta.all_maps():
        for x in converted[phi.tgt]:
            y = s.act(phi, x)
            assert y in conv_sets[phi.src], "invertible cells not operator-closed"
            action[(phi, x)] = y
    return TruncSSet(k, converted, action, name=f"N(core:{s.name[2:-1]})")
