"""Simplicial objects in the finite-set base, weighted limits, and the
Segal-map characterizations: the biinvertible-arrow object, completeness,
and groupoid-ness.

Weighted limits are always computed as conical limits over the category of
elements of the weight; the single matching-family code path produces the
data the oracle certifies, so no shape-specific limit formula exists
anywhere in the package.
"""

from .delta import MonotoneMap, TruncatedDelta, codegeneracy, collapse, \
    enumerate_monotone, face_inclusion, identity
from .errors import AxiomViolation, MissingLimit
from .fincat import (FinSetBase, SetDiagram, SetMor, SetObj, finite_limit,
                     identity_mor)
from .sset import (SMap, TruncSSet, biinvertible_weight, element_shape,
                   nerve_sset, product_sset, spine, standard_simplex,
                   sub_sset_inclusion, zigzag_weight)


class SimplicialObject:
    """A truncated functor into the finite-set base, with operator tables
    for every monotone map between ranks <= k."""

    def __init__(self, base, k, levels, ops, coskeletal=True, name=""):
        self.base = base
        self.k = k
        self.levels = {m: levels[m] for m in range(k + 1)}
        self.ops = dict(ops)          # MonotoneMap -> SetMor
        self.coskeletal = coskeletal
        self.name = name
        self._wl_cache = {}

    def level(self, m):
        return self.levels[m]

    def op(self, phi):
        if phi.is_identity:
            return identity_mor(self.levels[phi.src])
        return self.ops[phi]

    def act(self, phi, x):
        if phi.is_identity:
            return x
        return self.ops[phi](x)

    def level_sizes(self):
        return tuple(len(self.levels[m]) for m in range(self.k + 1))

    def validate(self):
        """Exhaustive simplicial identities within the truncation."""
        delta = TruncatedDelta(self.k)
        for phi in delta.all_maps():
            mor = self.op(phi)
            assert mor.src == self.levels[phi.tgt], f"operator {phi.key()} source"
            assert mor.tgt == self.levels[phi.src], f"operator {phi.key()} target"
        for g, f in delta.composable_pairs():
            left = self.op(g.after(f))
            right = self.op(f).after(self.op(g))
            assert left == right, \
                f"simplicial identity fails at {g.key()} . {f.key()}"
        return True

    def face(self, n, i):
        """The i-th face operator at level n."""
        keep = tuple(j for j in range(n + 1) if j != i)
        return self.op(face_inclusion(keep, n))

    def degeneracy(self, n, i):
        return self.op(codegeneracy(n, i))

    def __repr__(self):
        return f"SimplicialObject({self.name!r}, levels {self.level_sizes()})"


def from_sset(sset, base, k=None, name=None):
    """Lift a truncated simplicial set with hashable simplices into the base."""
    k = sset.k if k is None else k
    assert k <= sset.k
    name = name or sset.name
    levels = {m: base.obj(f"{name}_{m}", sset.level(m)) for m in range(k + 1)}
    ops = {}
    for phi in TruncatedDelta(k).all_maps():
        if phi.is_identity:
            continue
        ops[phi] = SetMor(levels[phi.tgt], levels[phi.src],
                          {x: sset.act(phi, x) for x in sset.level(phi.tgt)})
    return SimplicialObject(base, k, levels, ops,
                            coskeletal=sset.coskeletal, name=name)


def nerve(cat, base, k=3):
    """The nerve of a finite category as a simplicial object in the base."""
    return from_sset(nerve_sset(cat, k), base)


def constant_object(base, obj, k=3, name=None):
    """The constant simplicial object on a base object."""
    levels = {m: obj for m in range(k + 1)}
    ops = {}
    for phi in TruncatedDelta(k).all_maps():
        if not phi.is_identity:
            ops[phi] = identity_mor(obj)
    return SimplicialObject(base, k, levels, ops,
                            name=name or f"c({obj.name})")


def product_simplicial(x, y, name=None):
    """Levelwise binary product of simplicial objects over a common base."""
    assert x.k == y.k and x.base is y.base
    k = x.k
    label = name or f"({x.name}x{y.name})"
    levels, projections = {}, {}
    for m in range(k + 1):
        obj, projs = x.base.product([x.levels[m], y.levels[m]],
                                    name=f"{label}_{m}")
        levels[m] = obj
        projections[m] = projs
    ops = {}
    for phi in TruncatedDelta(k).all_maps():
        if phi.is_identity:
            continue
        ops[phi] = SetMor(levels[phi.tgt], levels[phi.src],
                          {(a, b): (x.act(phi, a), y.act(phi, b))
                           for (a, b) in levels[phi.tgt]})
    out = SimplicialObject(x.base, k, levels, ops,
                           coskeletal=x.coskeletal and y.coskeletal, name=label)
    return out, projections


def opposite(x):
    """Precompose with order reversal; levels unchanged, operators reindexed."""
    ops = {}
    for phi in TruncatedDelta(x.k).all_maps():
        if not phi.is_identity:
            ops[phi] = x.op(phi.op())
    return SimplicialObject(x.base, x.k, dict(x.levels), ops,
                            coskeletal=x.coskeletal, name=f"{x.name}^op")


# ---------------------------------------------------------------------------
# Weighted limits
# ---------------------------------------------------------------------------


class WeightedLimitResult:
    """Apex, legs over the element category, and decoding tables."""

    def __init__(self, weight, x, limit, cells):
        self.weight = weight
        self.x = x
        self.limit = limit            # fincat.LimitResult
        self.cells = cells            # list of (rank, weight simplex)
        self.cell_index = {c: i for i, c in enumerate(cells)}
        self.family_tuples = [
            tuple(fam[i] for i in range(len(cells))) for fam in limit.families
        ]
        self._lookup = None

    @property
    def apex(self):
        return self.limit.apex

    def value(self, element, cell):
        """Value of an apex element's family at a weight cell."""
        return self.family_tuples[element][self.cell_index[cell]]

    def index_of_tuple(self, key):
        if self._lookup is None:
            self._lookup = {t: n for n, t in enumerate(self.family_tuples)}
        return self._lookup.get(key)

    def index_of_family(self, family):
        """Apex element carrying the given {cell index -> value} family."""
        return self.index_of_tuple(
            tuple(family[i] for i in range(len(self.cells)))
        )

    def reindex_vector(self, smap, source_result):
        """For a weight map V -> W (self computing {W,X}), the positions in
        self's cell order realizing each of source_result's cells."""
        return [
            self.cell_index[(m, smap.at(m, v))]
            for (m, v) in source_result.cells
        ]

    def size(self):
        return len(self.limit.families)


def weighted_limit(weight, x, budget=None, name=None, full_graph=False):
    """The limit of x weighted by a truncated simplicial set.

    Computed as the conical limit of x composed with the projection from
    the (opposite) category of elements of the weight.  The search runs on
    the elementary-operator subgraph unless ``full_graph`` is set (the
    oracle certifies against the full graph).
    """
    key = (weight.cache_key(), full_graph)
    cached = x._wl_cache.get(key)
    if cached is not None:
        return cached
    if weight.k > x.k:
        raise MissingLimit(
            f"weight truncated at {weight.k} exceeds object truncation {x.k}"
        )
    shape, cells, morphisms = element_shape(weight,
                                            elementary_only=not full_graph)
    obs = {i: x.levels[m] for i, (m, _) in enumerate(cells)}
    mors = {}
    for j in range(shape.n_morphisms):
        phi, _ = morphisms[j]
        if not phi.is_identity:
            mors[j] = x.op(phi)
    diagram = SetDiagram(shape, obs, mors, base=x.base)
    label = name or f"{{{weight.name},{x.name}}}"
    limit = finite_limit(diagram, name=label, base=x.base, budget=budget)
    result = WeightedLimitResult(weight, x, limit, cells)
    x._wl_cache[key] = result
    return result


def classify_cell(weight, n, cell, k=None):
    """The map of weights from the truncated n-simplex picking out a cell."""
    k = weight.k if k is None else k
    source = standard_simplex(n, k)
    tables = {m: {w: weight.act(w, cell) for w in source.level(m)}
              for m in range(k + 1)}
    return SMap(source, weight, tables)


def terminal_weight_map(weight):
    """The unique map from a weight to the truncated 0-simplex."""
    target = standard_simplex(0, weight.k)
    tables = {m: {c: target.level(m)[0] for c in weight.level(m)}
              for m in range(weight.k + 1)}
    return SMap(weight, target, tables)


def induced_map(smap, res_w, res_v):
    """{W,X} -> {V,X} induced by a weight map V -> W (contravariantly)."""
    vec = res_w.reindex_vector(smap, res_v)
    mapping = {}
    for n, elem in enumerate(res_w.apex.elements):
        fam = res_w.family_tuples[n]
        target = res_v.index_of_tuple(tuple(fam[i] for i in vec))
        if target is None:
            raise MissingLimit("induced family missing from target limit")
        mapping[elem] = res_v.apex.elements[target]
    return SetMor(res_w.apex, res_v.apex, mapping)


def canonical_cone_map(x, n, res):
    """The comparison X_n -> {W,X} sending x to its operator family, for a
    weight whose cells are monotone maps into [n] (subobjects of the
    n-simplex).  For the full n-simplex this is the co-Yoneda bijection."""
    mapping = {}
    for xe in x.levels[n]:
        family = {i: x.act(w, xe) for i, (m, w) in enumerate(res.cells)}
        target = res.index_of_family(family)
        if target is None:
            raise MissingLimit("canonical cone misses the computed limit")
        mapping[xe] = res.apex.elements[target]
    return SetMor(x.levels[n], res.apex, mapping)


# ---------------------------------------------------------------------------
# Segal maps, completeness, groupoids
# ---------------------------------------------------------------------------


class SegalReport:
    def __init__(self, maps, bijective):
        self.maps = maps               # n -> SetMor X_n -> {S_n, X}
        self.bijective = bijective     # n -> bool

    @property
    def is_segal(self):
        return all(self.bijective.values())


def segal_maps(x, budget=None):
    """The comparison maps from each level to its spine-weighted limit."""
    maps, bijective = {}, {}
    for n in range(x.k + 1):
        res = weighted_limit(spine(n, x.k), x, budget=budget)
        mor = canonical_cone_map(x, n, res)
        maps[n] = mor
        bijective[n] = mor.is_bijective
    return SegalReport(maps, bijective)


def equiv_object(x, budget=None):
    """The object of arrows with a left and a right inverse, with its
    structure maps, plus the zig-zag limit it is carved from."""
    eq_weight = biinvertible_weight(x.k)
    res = weighted_limit(eq_weight, x, budget=budget)
    zz = weighted_limit(zigzag_weight(x.k), x, budget=budget)

    d0_res = weighted_limit(standard_simplex(0, x.k), x, budget=budget)
    unit0 = canonical_cone_map(x, 0, d0_res)            # X_0 -> {d0, X}
    to_equiv = induced_map(terminal_weight_map(eq_weight), d0_res, res)
    degeneracy_map = to_equiv.after(unit0)              # X_0 -> Equiv(X)

    e12 = MonotoneMap(1, 3, (1, 2))
    middle_smap = classify_cell(eq_weight, 1, ("s", e12))
    d1_res = weighted_limit(standard_simplex(1, x.k), x, budget=budget)
    middle_in_d1 = induced_map(middle_smap, res, d1_res)
    unit1 = canonical_cone_map(x, 1, d1_res)
    middle_edge_map = unit1.inverse().after(middle_in_d1)   # Equiv(X) -> X_1

    return EquivReport(res, zz, degeneracy_map, middle_edge_map)


class EquivReport:
    def __init__(self, equiv, zigzag, degeneracy_map, middle_edge_map):
        self.equiv = equiv
        self.zigzag = zigzag
        self.degeneracy_map = degeneracy_map
        self.middle_edge_map = middle_edge_map


def is_complete(x, budget=None):
    """True when the factorized degeneracy into the equivalence object is
    an isomorphism; returns (flag, witness)."""
    report = equiv_object(x, budget=budget)
    mor = report.degeneracy_map
    if mor.is_bijective:
        return True, None
    image = set(mor.mapping.values())
    for elem in mor.tgt.elements:
        if elem not in image:
            witness = report.middle_edge_map(elem)
            return False, witness
    # not injective: a collision pair is the witness
    seen = {}
    for k_, v in mor.mapping.items():
        if v in seen:
            return False, (seen[v], k_)
        seen[v] = k_
    return False, None


def is_groupoid(x, budget=None):
    """True when extracting the middle edge from the equivalence object is
    an isomorphism."""
    report = equiv_object(x, budget=budget)
    return report.middle_edge_map.is_bijective


def equiv_by_pullback(x):
    """Independent route to the equivalence object: scan level 3 for cells
    whose (0,2) and (1,3) edges are degenerate, and return their middle
    edges.  The weighted-limit route must agree with this list."""
    e02 = face_inclusion((0, 2), 3)
    e13 = face_inclusion((1, 3), 3)
    e12 = face_inclusion((1, 2), 3)
    s0 = codegeneracy(0, 0)
    v0 = face_inclusion((0,), 1)
    v1 = face_inclusion((1,), 1)
    out = []
    for t in x.levels[3]:
        left = x.act(e02, t)
        right = x.act(e13, t)
        if x.act(s0, x.act(v0, left)) == left and \
                x.act(s0, x.act(v0, right)) == right:
            out.append((t, x.act(e12, t)))
    return out


def matching_object(x, n, budget=None):
    """The boundary-weighted limit at rank n."""
    from .sset import boundary
    return weighted_limit(boundary(n, x.k), x, budget=budget)


Weight = TruncSSet


# ---------------------------------------------------------------------------
# Internal categories
# ---------------------------------------------------------------------------


class InternalCategory:
    """A simplicial object whose Segal comparison maps are all bijections.

    Certification caches the level-2 and level-3 chain fillers, which back
    composition in the externalization.
    """

    def __init__(self, x, segal_report=None, budget=None):
        self.x = x
        self.report = segal_report or segal_maps(x, budget=budget)
        if not self.report.is_segal:
            bad = [n for n, ok in self.report.bijective.items() if not ok]
            raise AxiomViolation(
                f"Segal maps fail to be isomorphisms at levels {bad}",
                equation="segal", witness=bad,
            )
        self._pair_filler = None
        self._triple_filler = None

    @property
    def base(self):
        return self.x.base

    @property
    def k(self):
        return self.x.k

    def level(self, m):
        return self.x.levels[m]

    def pair_filler(self):
        """(first edge, second edge) -> the unique 2-cell with those faces."""
        if self._pair_filler is None:
            e01 = face_inclusion((0, 1), 2)
            e12 = face_inclusion((1, 2), 2)
            self._pair_filler = {
                (self.x.act(e01, w), self.x.act(e12, w)): w
                for w in self.x.levels[2]
            }
        return self._pair_filler

    def triple_filler(self):
        if self._triple_filler is None:
            ops = [face_inclusion((i, i + 1), 3) for i in range(3)]
            self._triple_filler = {
                tuple(self.x.act(op, w) for op in ops): w
                for w in self.x.levels[3]
            }
        return self._triple_filler

    def compose_edges(self, first, second):
        """The composite edge of a composable pair (first then second)."""
        w = self.pair_filler()[(first, second)]
        return self.x.act(face_inclusion((0, 2), 2), w)

    def edge_source(self, e):
        return self.x.act(face_inclusion((0,), 1), e)

    def edge_target(self, e):
        return self.x.act(face_inclusion((1,), 1), e)

    def identity_edge(self, v):
        return self.x.act(codegeneracy(0, 0), v)

    def invertible_edges(self):
        out = []
        for e in self.x.levels[1]:
            s, t = self.edge_source(e), self.edge_target(e)
            for f in self.x.levels[1]:
                if self.edge_source(f) == t and self.edge_target(f) == s and \
                        self.compose_edges(e, f) == self.identity_edge(s) and \
                        self.compose_edges(f, e) == self.identity_edge(t):
                    out.append((e, f))
                    break
        return out

    def __repr__(self):
        return f"InternalCategory({self.x.name!r}, levels {self.x.level_sizes()})"


def internal_nerve(base, objects, arrows, src, tgt, ident, comp, k=3, name=None):
    """Build the nerve of internal-category data in the base, checking the
    axioms first and reporting the failing equation otherwise.

    ``src, tgt : arrows -> objects``, ``ident : objects -> arrows`` and
    ``comp : composable pairs -> arrows`` are SetMor/dict-like tables.
    """
    def eq(cond, equation, witness):
        if not cond:
            raise AxiomViolation(f"internal category axiom fails: {equation}",
                                 equation=equation, witness=witness)

    for o in objects:
        eq(src(ident(o)) == o, "src . ident = id", o)
        eq(tgt(ident(o)) == o, "tgt . ident = id", o)
    pairs = [(a, b) for a in arrows for b in arrows if tgt(a) == src(b)]
    for (a, b) in pairs:
        c = comp(a, b)
        eq(src(c) == src(a), "src of composite", (a, b))
        eq(tgt(c) == tgt(b), "tgt of composite", (a, b))
    for a in arrows:
        eq(comp(ident(src(a)), a) == a, "left unit", a)
        eq(comp(a, ident(tgt(a))) == a, "right unit", a)
    for (a, b) in pairs:
        for c in arrows:
            if tgt(b) == src(c):
                eq(comp(comp(a, b), c) == comp(a, comp(b, c)),
                   "associativity", (a, b, c))

    name = name or "internal-nerve"
    levels = {0: base.obj(f"{name}_0", objects),
              1: base.obj(f"{name}_1", arrows)}
    chains = {1: [(a,) for a in arrows]}
    for m in range(2, k + 1):
        chains[m] = [c + (b,) for c in chains[m - 1] for b in arrows
                     if tgt(c[-1]) == src(b)]
        levels[m] = base.obj(f"{name}_{m}", chains[m])

    def vertex_of(chain, i):
        return src(chain[i]) if i < len(chain) else tgt(chain[-1])

    def segment(chain, lo, hi):
        if lo == hi:
            return ident(vertex_of(chain, lo))
        m = chain[lo]
        for i in range(lo + 1, hi):
            m = comp(m, chain[i])
        return m

    ops = {}
    for phi in TruncatedDelta(k).all_maps():
        if phi.is_identity:
            continue
        m, n = phi.src, phi.tgt
        mapping = {}
        for x in levels[n]:
            if n == 0:
                val = tuple(ident(x) for _ in range(max(m, 1)))
            else:
                chain = (x,) if n == 1 else x
                if m == 0:
                    mapping[x] = vertex_of(chain, phi.values[0])
                    continue
                val = tuple(segment(chain, phi.values[i], phi.values[i + 1])
                            for i in range(m))
            mapping[x] = val[0] if m <= 1 else val
        ops[phi] = SetMor(levels[n], levels[m], mapping)
    obj = SimplicialObject(base, k, levels, ops, name=name)
    return InternalCategory(obj)


def coskeletal_extension(x, new_k, budget=None):
    """Extend a coskeletal simplicial object to a higher truncation: the
    new levels are limits weighted by the truncations of the higher
    representables, which is exactly what the coskeletal policy promises."""
    assert x.coskeletal, "only coskeletal objects extend canonically"
    k = x.k
    if new_k <= k:
        return x
    levels = dict(x.levels)
    results = {}
    for n in range(k + 1, new_k + 1):
        res = weighted_limit(standard_simplex(n, k), x, budget=budget,
                             name=f"{x.name}_{n}")
        results[n] = res
        levels[n] = res.apex
    ops = {}
    for phi in TruncatedDelta(new_k).all_maps():
        if phi.is_identity:
            continue
        m, n = phi.src, phi.tgt
        if m <= k and n <= k:
            ops[phi] = x.op(phi)
        elif n > k and m <= k:
            # evaluate the limit family at the cell named by phi itself
            res = results[n]
            ops[phi] = SetMor(levels[n], levels[m], {
                elem: res.value(elem, (m, phi)) for elem in levels[n]
            })
        elif n <= k and m > k:
            res = results[m]
            mapping = {}
            for elem in levels[n]:
                family = {
                    i: x.act(phi.after(w), elem)
                    for i, (l, w) in enumerate(res.cells)
                }
                mapping[elem] = res.apex.elements[res.index_of_family(family)]
            ops[phi] = SetMor(levels[n], levels[m], mapping)
        else:
            res_n, res_m = results[n], results[m]
            vec = [res_n.cell_index[(l, phi.after(w))]
                   for (l, w) in res_m.cells]
            mapping = {}
            for elem in levels[n]:
                fam = res_n.family_tuples[elem]
                mapping[elem] = res_m.apex.elements[
                    res_m.index_of_tuple(tuple(fam[i] for i in vec))
                ]
            ops[phi] = SetMor(levels[n], levels[m], mapping)
    out = SimplicialObject(x.base, new_k, levels, ops,
                           coskeletal=True, name=f"{x.name}|k{new_k}")
    return out


def complete_ops_from_elementary(k, levels, elem_ops):
    """Operator tables for every monotone map between ranks <= k, generated
    from the elementary faces and degeneracies through the unique epi-mono
    factorization."""
    from .delta import codegeneracy as sigma_map, coface as delta_map
    memo = {}

    def get(phi):
        if phi.is_identity:
            return identity_mor(levels[phi.src])
        got = memo.get(phi)
        if got is not None:
            return got
        if phi in elem_ops:
            out = elem_ops[phi]
        elif not phi.is_injective:
            i = next(j for j in range(phi.src)
                     if phi.values[j] == phi.values[j + 1])
            rest = MonotoneMap(phi.src - 1, phi.tgt,
                               phi.values[:i] + phi.values[i + 1:])
            out = get(sigma_map(phi.src - 1, i)).after(get(rest))
        else:
            j = next(v for v in range(phi.tgt + 1) if v not in set(phi.values))
            rest = MonotoneMap(phi.src, phi.tgt - 1,
                               tuple(v if v < j else v - 1 for v in phi.values))
            out = get(rest).after(get(delta_map(phi.tgt, j)))
        memo[phi] = out
        return out

    return {phi: get(phi) for phi in TruncatedDelta(k).all_maps()
            if not phi.is_identity}


def elementary_maps(k):
    """All cofaces and codegeneracies between ranks <= k."""
    from .delta import codegeneracy as sigma_map, coface as delta_map
    out = []
    for n in range(1, k + 1):
        out.extend(delta_map(n, i) for i in range(n + 1))
    for n in range(k):
        out.extend(sigma_map(n, i) for i in range(n + 1))
    return out


def simplicial_object_iso(x, y, budget=None):
    """A levelwise bijection commuting with all operators, or None."""
    if x.k != y.k or x.level_sizes() != y.level_sizes():
        return None
    from .externalize import internal_functors
    isos = internal_functors(x, y, budget=budget, levelwise_bijective=True)
    return isos[0] if isos else None
