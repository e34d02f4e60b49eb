"""Finite category kernel.

Explicit finite categories, functors and natural transformations, the
bounded finite-set base, and computed (co)limits.  Limits are found by
exhaustive matching-family search over the diagram, never by a shape
specific formula, so that the same code path backs both the constructions
and their universal-property certificates.

Composition convention everywhere: ``compose(g, f) == g . f`` with ``f``
applied first.
"""

from itertools import product as iproduct

from .errors import Budget, BoundExceeded, SearchBudgetExceeded

DEFAULT_BOUND = 64


# ---------------------------------------------------------------------------
# The bounded finite-set base
# ---------------------------------------------------------------------------


class SetObj:
    """A finite set with a name and an explicit, ordered element list."""

    __slots__ = ("name", "elements", "_index")

    def __init__(self, name, elements):
        self.name = name
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"duplicate elements in set {name!r}")
        self._index = {x: i for i, x in enumerate(self.elements)}

    @property
    def size(self):
        return len(self.elements)

    def index(self, x):
        return self._index[x]

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, SetObj)
            and self.name == other.name
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.name, self.elements))

    def __repr__(self):
        return f"SetObj({self.name!r}, {len(self.elements)} elements)"


class SetMor:
    """A function table between two SetObj values."""

    __slots__ = ("src", "tgt", "mapping", "_pre")

    def __init__(self, src, tgt, mapping):
        self.src = src
        self.tgt = tgt
        self.mapping = dict(mapping)
        self._pre = None
        if set(self.mapping) != set(src.elements):
            raise ValueError(f"function table does not cover {src.name!r}")
        for v in self.mapping.values():
            if v not in tgt:
                raise ValueError(f"value {v!r} not in {tgt.name!r}")

    def __call__(self, x):
        return self.mapping[x]

    def preimages(self, value):
        if self._pre is None:
            pre = {}
            for x, v in self.mapping.items():
                pre.setdefault(v, []).append(x)
            self._pre = pre
        return self._pre.get(value, ())

    def after(self, other):
        """Composite self . other."""
        if other.tgt != self.src:
            raise ValueError("set maps not composable")
        return SetMor(other.src, self.tgt, {x: self.mapping[y] for x, y in other.mapping.items()})

    @property
    def is_bijective(self):
        return len(set(self.mapping.values())) == len(self.src) == len(self.tgt)

    def inverse(self):
        if not self.is_bijective:
            raise ValueError("set map is not invertible")
        return SetMor(self.tgt, self.src, {v: k for k, v in self.mapping.items()})

    def table(self):
        return tuple(self.mapping[x] for x in self.src.elements)

    def __eq__(self, other):
        return (
            isinstance(other, SetMor)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.table() == other.table()
        )

    def __hash__(self):
        return hash((self.src, self.tgt, self.table()))

    def __repr__(self):
        return f"SetMor({self.src.name!r} -> {self.tgt.name!r})"


def identity_mor(obj):
    return SetMor(obj, obj, {x: x for x in obj})


class CoproductResult:
    def __init__(self, obj, injections):
        self.obj = obj
        self.injections = injections


class FinSetBase:
    """Finite sets of size <= bound; produces objects and reports, never
    truncates, when a construction would overflow the bound."""

    def __init__(self, bound=DEFAULT_BOUND):
        self.bound = int(bound)

    def check_size(self, size, what="object"):
        if size > self.bound:
            raise BoundExceeded(
                f"{what} of size {size} exceeds base bound {self.bound}",
                size=size,
                bound=self.bound,
            )

    def obj(self, name, elements):
        elements = tuple(elements)
        self.check_size(len(elements), name)
        return SetObj(name, elements)

    def range_obj(self, size, name=None):
        return self.obj(name or f"[{size}]", range(size))

    def terminal(self):
        return self.obj("1", (0,))

    def initial(self):
        return self.obj("0", ())

    def coproduct(self, parts, name=None):
        """Tagged disjoint union with its injections."""
        total = sum(len(p) for p in parts)
        label = name or "(" + "+".join(p.name for p in parts) + ")"
        self.check_size(total, label)
        elements = [(i, x) for i, part in enumerate(parts) for x in part]
        obj = SetObj(label, elements)
        injections = [
            SetMor(part, obj, {x: (i, x) for x in part}) for i, part in enumerate(parts)
        ]
        return CoproductResult(obj, injections)

    def copair(self, coproduct, legs):
        """The unique map out of a coproduct restricting to the given legs."""
        mapping = {}
        for i, leg in enumerate(legs):
            for x in leg.src:
                mapping[(i, x)] = leg(x)
        return SetMor(coproduct.obj, legs[0].tgt, mapping)

    def product(self, parts, name=None):
        total = 1
        for p in parts:
            total *= len(p)
        label = name or "(" + "x".join(p.name for p in parts) + ")"
        self.check_size(total, label)
        elements = list(iproduct(*[p.elements for p in parts]))
        obj = SetObj(label, elements)
        projections = [
            SetMor(obj, part, {x: x[i] for x in elements}) for i, part in enumerate(parts)
        ]
        return obj, projections

    def exponential_obj(self, target, source, name=None):
        """All functions source -> target as an object of the base."""
        size = len(target) ** len(source)
        label = name or f"({target.name}^{source.name})"
        self.check_size(size, label)
        elements = [tuple(zip(source.elements, vals))
                    for vals in iproduct(target.elements, repeat=len(source))]
        return SetObj(label, elements)

    def hom_iter(self, src, tgt):
        """All functions src -> tgt, as SetMor values, in a stable order."""
        for vals in iproduct(tgt.elements, repeat=len(src)):
            yield SetMor(src, tgt, dict(zip(src.elements, vals)))

    def hom_count(self, src, tgt):
        return len(tgt) ** len(src)


# ---------------------------------------------------------------------------
# Finite categories
# ---------------------------------------------------------------------------


class FinCat:
    """A finite category given by explicit object/morphism tables.

    ``comp`` maps ``(g, f)`` to ``g . f``; either a full table or a
    ``compose_rule`` callable may back it (rule-based composition keeps
    large categories of elements cheap to build).
    """

    def __init__(self, objects, morphisms, src, tgt, identity, comp=None,
                 compose_rule=None, name=""):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.identity = tuple(identity)
        self._comp = dict(comp) if comp is not None else None
        self._rule = compose_rule
        self.name = name
        if self._comp is None and self._rule is None:
            raise ValueError("need a composition table or rule")
        if len(self.src) != len(self.morphisms) or len(self.tgt) != len(self.morphisms):
            raise ValueError("source/target tables must cover all morphisms")
        if len(self.identity) != len(self.objects):
            raise ValueError("identity table must cover all objects")

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphisms)

    def compose(self, g, f):
        if self.tgt[f] != self.src[g]:
            raise ValueError("morphisms not composable")
        if self._comp is not None:
            h = self._comp.get((g, f))
            if h is None and self._rule is not None:
                h = self._rule(g, f)
                self._comp[(g, f)] = h
            if h is None:
                raise ValueError("composite missing from table")
            return h
        return self._rule(g, f)

    def is_identity_mor(self, m):
        return self.identity[self.src[m]] == m and self.src[m] == self.tgt[m]

    def hom(self, a, b):
        return [m for m in range(self.n_morphisms) if self.src[m] == a and self.tgt[m] == b]

    def out_of(self, a):
        return [m for m in range(self.n_morphisms) if self.src[m] == a]

    def composable_pairs(self):
        by_src = {}
        for g in range(self.n_morphisms):
            by_src.setdefault(self.src[g], []).append(g)
        for f in range(self.n_morphisms):
            for g in by_src.get(self.tgt[f], ()):
                yield g, f

    def validate(self):
        """Exhaustively check totality, unitality and associativity."""
        for a, e in enumerate(self.identity):
            assert self.src[e] == a and self.tgt[e] == a, f"identity of {a} has wrong span"
        for g, f in self.composable_pairs():
            h = self.compose(g, f)
            assert self.src[h] == self.src[f] and self.tgt[h] == self.tgt[g], \
                f"composite of ({g},{f}) has wrong span"
        for f in range(self.n_morphisms):
            assert self.compose(self.identity[self.tgt[f]], f) == f, "left unit fails"
            assert self.compose(f, self.identity[self.src[f]]) == f, "right unit fails"
        for g, f in self.composable_pairs():
            gf = self.compose(g, f)
            for h in range(self.n_morphisms):
                if self.src[h] == self.tgt[g]:
                    assert self.compose(h, gf) == self.compose(self.compose(h, g), f), \
                        "associativity fails"
        return True

    def inverse_of(self, m):
        """The two-sided inverse of m, or None."""
        a, b = self.src[m], self.tgt[m]
        for w in self.hom(b, a):
            if (self.compose(w, m) == self.identity[a]
                    and self.compose(m, w) == self.identity[b]):
                return w
        return None

    def iso_morphisms(self):
        return [m for m in range(self.n_morphisms) if self.inverse_of(m) is not None]

    def is_gaunt(self):
        """True when every isomorphism is an identity."""
        return all(self.is_identity_mor(m) for m in self.iso_morphisms())

    def max_subgroupoid(self):
        """The wide subcategory of invertible morphisms, as a FinCat."""
        isos = self.iso_morphisms()
        keep = {m: i for i, m in enumerate(isos)}
        comp = {}
        for g in isos:
            for f in isos:
                if self.tgt[f] == self.src[g]:
                    comp[(keep[g], keep[f])] = keep[self.compose(g, f)]
        return FinCat(
            objects=self.objects,
            morphisms=tuple(self.morphisms[m] for m in isos),
            src=tuple(self.src[m] for m in isos),
            tgt=tuple(self.tgt[m] for m in isos),
            identity=tuple(keep[e] for e in self.identity),
            comp=comp,
            name=f"core({self.name})",
        )

    def opposite(self):
        comp = {}
        for g, f in self.composable_pairs():
            comp[(f, g)] = self.compose(g, f)
        return FinCat(self.objects, self.morphisms, self.tgt, self.src,
                      self.identity, comp=comp, name=f"{self.name}^op")

    def __repr__(self):
        return (f"FinCat({self.name!r}, {self.n_objects} objects, "
                f"{self.n_morphisms} morphisms)")


def discrete_cat(labels, name=None):
    labels = tuple(labels)
    n = len(labels)
    return FinCat(
        objects=labels,
        morphisms=tuple(f"id_{x}" for x in labels),
        src=tuple(range(n)),
        tgt=tuple(range(n)),
        identity=tuple(range(n)),
        comp={(i, i): i for i in range(n)},
        name=name or f"disc({n})",
    )


def terminal_cat():
    return discrete_cat(("*",), name="1")


def chain_cat(n):
    """The linear order 0 -> 1 -> ... -> n as a category."""
    objects = tuple(range(n + 1))
    morphisms = []
    span = []
    for a in range(n + 1):
        for b in range(a, n + 1):
            morphisms.append(f"{a}<={b}")
            span.append((a, b))
    index = {s: i for i, s in enumerate(span)}
    comp = {}
    for (a, b) in span:
        for (b2, c) in span:
            if b2 == b:
                comp[(index[(b, c)], index[(a, b)])] = index[(a, c)]
    return FinCat(
        objects=objects,
        morphisms=tuple(morphisms),
        src=tuple(a for a, _ in span),
        tgt=tuple(b for _, b in span),
        identity=tuple(index[(a, a)] for a in objects),
        comp=comp,
        name=f"[{n}]",
    )


def poset_cat(elements, leq, name=None):
    """The category of a finite poset given by a reflexive `leq` predicate."""
    elements = tuple(elements)
    span = [(a, b) for a in elements for b in elements if leq(a, b)]
    index = {s: i for i, s in enumerate(span)}
    comp = {}
    for (a, b) in span:
        for (b2, c) in span:
            if b2 == b:
                comp[(index[(b, c)], index[(a, b)])] = index[(a, c)]
    pos = {x: i for i, x in enumerate(elements)}
    return FinCat(
        objects=elements,
        morphisms=tuple(f"{a}<={b}" for a, b in span),
        src=tuple(pos[a] for a, _ in span),
        tgt=tuple(pos[b] for _, b in span),
        identity=tuple(index[(a, a)] for a in elements),
        comp=comp,
        name=name or "poset",
    )


def group_cat(table, name=None):
    """One-object category of a finite group given by its Cayley table.

    ``table[(g, h)] = g * h``; element 'e' must be the unit.
    """
    elems = sorted({g for g, _ in table} | {h for _, h in table})
    index = {g: i for i, g in enumerate(elems)}
    comp = {(index[g], index[h]): index[table[(g, h)]] for (g, h) in table}
    return FinCat(
        objects=("*",),
        morphisms=tuple(elems),
        src=(0,) * len(elems),
        tgt=(0,) * len(elems),
        identity=(index["e"],),
        comp=comp,
        name=name or "BG",
    )


def cyclic_group_cat(n):
    table = {(f"g{a}", f"g{b}"): f"g{(a + b) % n}" for a in range(n) for b in range(n)}
    table = {
        (("e" if a == "g0" else a), ("e" if b == "g0" else b)):
            ("e" if c == "g0" else c)
        for (a, b), c in table.items()
    }
    return group_cat(table, name=f"BZ{n}")


def disjoint_union_cat(cats, name=None):
    objects, morphisms, src, tgt, identity = [], [], [], [], []
    comp = {}
    for i, c in enumerate(cats):
        ob_off, mor_off = len(objects), len(morphisms)
        objects.extend((i, x) for x in c.objects)
        morphisms.extend((i, m) for m in c.morphisms)
        src.extend(ob_off + s for s in c.src)
        tgt.extend(ob_off + t for t in c.tgt)
        identity.extend(mor_off + e for e in c.identity)
        for g, f in c.composable_pairs():
            comp[(mor_off + g, mor_off + f)] = mor_off + c.compose(g, f)
    return FinCat(tuple(objects), tuple(morphisms), tuple(src), tuple(tgt),
                  tuple(identity), comp=comp,
                  name=name or "+".join(c.name for c in cats))


def product_cat(a, b, name=None):
    objects = [(x, y) for x in range(a.n_objects) for y in range(b.n_objects)]
    ob_index = {o: i for i, o in enumerate(objects)}
    morphisms = [(f, g) for f in range(a.n_morphisms) for g in range(b.n_morphisms)]
    mor_index = {m: i for i, m in enumerate(morphisms)}
    src = [ob_index[(a.src[f], b.src[g])] for f, g in morphisms]
    tgt = [ob_index[(a.tgt[f], b.tgt[g])] for f, g in morphisms]
    identity = [mor_index[(a.identity[x], b.identity[y])] for x, y in objects]
    comp = {}
    for (f2, g2) in morphisms:
        for (f1, g1) in morphisms:
            if a.tgt[f1] == a.src[f2] and b.tgt[g1] == b.src[g2]:
                comp[(mor_index[(f2, g2)], mor_index[(f1, g1)])] = \
                    mor_index[(a.compose(f2, f1), b.compose(g2, g1))]
    return FinCat(
        tuple((a.objects[x], b.objects[y]) for x, y in objects),
        tuple((a.morphisms[f], b.morphisms[g]) for f, g in morphisms),
        tuple(src), tuple(tgt), tuple(identity), comp=comp,
        name=name or f"{a.name}x{b.name}",
    )


class FinFunctor:
    """A functor between finite categories, as object and morphism tables."""

    def __init__(self, source, target, obj_map, mor_map, name=""):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        self.name = name

    def on_obj(self, a):
        return self.obj_map[a]

    def on_mor(self, m):
        return self.mor_map[m]

    def validate(self):
        s, t = self.source, self.target
        for m in range(s.n_morphisms):
            fm = self.mor_map[m]
            assert t.src[fm] == self.obj_map[s.src[m]], "source not preserved"
            assert t.tgt[fm] == self.obj_map[s.tgt[m]], "target not preserved"
        for a in range(s.n_objects):
            assert self.mor_map[s.identity[a]] == t.identity[self.obj_map[a]], \
                "identity not preserved"
        for g, f in s.composable_pairs():
            assert self.mor_map[s.compose(g, f)] == \
                t.compose(self.mor_map[g], self.mor_map[f]), "composition not preserved"
        return True

    def after(self, other):
        return FinFunctor(
            other.source, self.target,
            tuple(self.obj_map[a] for a in other.obj_map),
            tuple(self.mor_map[m] for m in other.mor_map),
        )

    def __eq__(self, other):
        return (isinstance(other, FinFunctor)
                and self.source is other.source and self.target is other.target
                and self.obj_map == other.obj_map and self.mor_map == other.mor_map)

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.obj_map, self.mor_map))

    def __repr__(self):
        return f"FinFunctor({self.name or (self.obj_map, self.mor_map)!r})"


def identity_functor(cat):
    return FinFunctor(cat, cat, tuple(range(cat.n_objects)),
                      tuple(range(cat.n_morphisms)), name=f"1_{cat.name}")


class NatTransFin:
    """A natural transformation between parallel FinFunctors."""

    def __init__(self, source, target, components):
        self.source = source      # FinFunctor F
        self.target = target      # FinFunctor G
        self.components = tuple(components)

    def validate(self):
        F, G = self.source, self.target
        c = F.source
        d = F.target
        for a in range(c.n_objects):
            comp = self.components[a]
            assert d.src[comp] == F.obj_map[a] and d.tgt[comp] == G.obj_map[a], \
                "component has wrong span"
        for m in range(c.n_morphisms):
            a, b = c.src[m], c.tgt[m]
            left = d.compose(self.components[b], F.mor_map[m])
            right = d.compose(G.mor_map[m], self.components[a])
            assert left == right, "naturality square fails"
        return True

    def __eq__(self, other):
        return (isinstance(other, NatTransFin)
                and self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target, self.components))


# ---------------------------------------------------------------------------
# Limits by matching-family search
# ---------------------------------------------------------------------------


class SetDiagram:
    """A functor from a finite shape into the finite-set base, as tables."""

    def __init__(self, shape, obs, mors, base=None):
        self.shape = shape
        self.obs = dict(obs)          # object index -> SetObj
        self.mors = dict(mors)        # morphism index -> SetMor (identities optional)
        self.base = base or FinSetBase()

    def value_on(self, m):
        mor = self.mors.get(m)
        if mor is None:
            if not self.shape.is_identity_mor(m):
                raise ValueError(f"diagram missing morphism {m}")
            mor = identity_mor(self.obs[self.shape.src[m]])
            self.mors[m] = mor
        return mor

    def validate(self):
        for m in range(self.shape.n_morphisms):
            mor = self.value_on(m)
            assert mor.src == self.obs[self.shape.src[m]], "diagram source mismatch"
            assert mor.tgt == self.obs[self.shape.tgt[m]], "diagram target mismatch"
        for g, f in self.shape.composable_pairs():
            left = self.value_on(self.shape.compose(g, f))
            right = self.value_on(g).after(self.value_on(f))
            assert left == right, "diagram not functorial"
        return True


class LimitResult:
    """Apex, projection legs, and the data needed to certify the cone."""

    def __init__(self, apex, legs, diagram, families):
        self.apex = apex              # SetObj; elements are indices 0..n-1
        self.legs = legs              # object index -> SetMor apex -> D(j)
        self.diagram = diagram
        self.families = families      # list of dict: object index -> value

    def family_of(self, element):
        return self.families[element]

    def factor_cone(self, cone_legs):
        """The unique factoring map through the apex for a competing cone.

        ``cone_legs`` maps shape-object index to a SetMor out of a common
        test object.  Returns None when some element fails to factor.
        """
        test = next(iter(cone_legs.values())).src
        lookup = {tuple(sorted(fam.items())): i for i, fam in enumerate(self.families)}
        mapping = {}
        for x in test:
            fam = tuple(sorted((j, leg(x)) for j, leg in cone_legs.items()))
            i = lookup.get(fam)
            if i is None:
                return None
            mapping[x] = self.apex.elements[i]
        return SetMor(test, self.apex, mapping)


def _matching_families(diagram, order=None, budget=None):
    """Exhaustively enumerate matching families of the diagram.

    Backtracking with incremental arc-consistency: assigning a node filters
    its neighbours through the connecting function tables.
    """
    shape = diagram.shape
    n = shape.n_objects
    if n == 0:
        yield {}
        return
    arrows = [
        (shape.src[m], shape.tgt[m], diagram.value_on(m))
        for m in range(shape.n_morphisms)
        if not shape.is_identity_mor(m)
    ]
    out_arrows = {j: [] for j in range(n)}
    in_arrows = {j: [] for j in range(n)}
    for a, b, mor in arrows:
        out_arrows[a].append((b, mor))
        in_arrows[b].append((a, mor))

    assign = {}
    domains = {j: None for j in range(n)}     # None means unconstrained
    forced = []                                # nodes whose domain shrank

    # static fallback order: biggest ranks first so one choice forces the
    # whole operator orbit underneath it
    static_order = sorted(range(n), key=lambda j: -len(diagram.obs[j]))

    def candidates(j):
        dom = domains[j]
        obj = diagram.obs[j]
        if dom is None:
            return list(obj.elements)
        if len(dom) <= 1:
            return list(dom)
        return sorted(dom, key=obj.index)

    def pick():
        while forced:
            j = forced.pop()
            if j not in assign:
                return j, candidates(j)
        for j in static_order:
            if j not in assign:
                return j, candidates(j)
        return None, None

    def constrain(j, values):
        old = domains[j]
        new = set(values) if old is None else old & set(values)
        domains[j] = new
        if len(new) <= 1:
            forced.append(j)
        return old

    def attempt(j, x):
        """Try assigning x to j; returns an undo list or None on conflict."""
        for b, mor in out_arrows[j]:
            if b in assign and mor(x) != assign[b]:
                return None
        for a, mor in in_arrows[j]:
            if a in assign and mor(assign[a]) != x:
                return None
        assign[j] = x
        undo = []
        feasible = True
        for b, mor in out_arrows[j]:
            if b not in assign:
                undo.append((b, constrain(b, [mor(x)])))
                if not domains[b]:
                    feasible = False
                    break
        if feasible:
            for a, mor in in_arrows[j]:
                if a not in assign:
                    undo.append((a, constrain(a, mor.preimages(x))))
                    if not domains[a]:
                        feasible = False
                        break
        if feasible:
            return undo
        for node, old in reversed(undo):
            domains[node] = old
        del assign[j]
        return None

    # iterative depth-first search; frames are (node, candidate iterator,
    # pending undo list for the node's current assignment)
    first_j, first_cand = pick()
    frames = [[first_j, iter(first_cand), None]]
    while frames:
        frame = frames[-1]
        j, it, undo = frame
        if undo is not None:
            for node, old in reversed(undo):
                domains[node] = old
            frame[2] = None
            del assign[j]
        advanced = False
        for x in it:
            if budget is not None:
                budget.tick()
            undo = attempt(j, x)
            if undo is not None:
                frame[2] = undo
                advanced = True
                break
        if not advanced:
            frames.pop()
            continue
        if len(assign) == n:
            yield dict(assign)
        else:
            nj, ncand = pick()
            frames.append([nj, iter(ncand), None])


def finite_limit(diagram, name=None, base=None, budget=None):
    """The limit of a finite diagram of finite sets, with projection legs.

    The apex is carried as the explicit set of matching families, so the
    enumeration itself is the universal-property witness; `oracle.verify_limit`
    re-derives it along an independent traversal.
    """
    base = base or diagram.base
    families = sorted(
        _matching_families(diagram, budget=budget),
        key=lambda fam: tuple(
            diagram.obs[j].index(fam[j]) for j in range(diagram.shape.n_objects)
        ),
    )
    label = name or f"lim({diagram.shape.name})"
    base.check_size(len(families), label)
    apex = SetObj(label, range(len(families)))
    legs = {
        j: SetMor(apex, diagram.obs[j], {i: fam[j] for i, fam in enumerate(families)})
        for j in range(diagram.shape.n_objects)
    }
    return LimitResult(apex, legs, diagram, families)


def finite_coproduct(base, parts, name=None):
    return base.coproduct(parts, name=name)


# ---------------------------------------------------------------------------
# Functor categories
# ---------------------------------------------------------------------------


def enumerate_functors(a, b, budget=None):
    """All functors a -> b, by backtracking over object then morphism tables."""
    results = []
    non_identity = [m for m in range(a.n_morphisms) if not a.is_identity_mor(m)]

    def assign_morphisms(obj_map):
        mor_map = [None] * a.n_morphisms
        for x in range(a.n_objects):
            mor_map[a.identity[x]] = b.identity[obj_map[x]]

        def backtrack(i):
            if budget is not None:
                budget.tick()
            if i == len(non_identity):
                cand = FinFunctor(a, b, obj_map, tuple(mor_map))
                for g, f in a.composable_pairs():
                    if mor_map[a.compose(g, f)] != b.compose(mor_map[g], mor_map[f]):
                        return
                results.append(cand)
                return
            m = non_identity[i]
            if mor_map[m] is not None:
                backtrack(i + 1)
                return
            for h in b.hom(obj_map[a.src[m]], obj_map[a.tgt[m]]):
                mor_map[m] = h
                ok = True
                for g, f in a.composable_pairs():
                    gf = a.compose(g, f)
                    if mor_map[g] is not None and mor_map[f] is not None \
                            and mor_map[gf] is not None:
                        if mor_map[gf] != b.compose(mor_map[g], mor_map[f]):
                            ok = False
                            break
                if ok:
                    backtrack(i + 1)
                mor_map[m] = None

        backtrack(0)

    for obj_values in iproduct(range(b.n_objects), repeat=a.n_objects):
        assign_morphisms(tuple(obj_values))
    return results


def enumerate_nat_trans(F, G, budget=None):
    """All natural transformations F => G between parallel functors."""
    a, b = F.source, F.target
    results = []
    components = [None] * a.n_objects

    def backtrack(i):
        if budget is not None:
            budget.tick()
        if i == a.n_objects:
            results.append(NatTransFin(F, G, tuple(components)))
            return
        for comp in b.hom(F.obj_map[i], G.obj_map[i]):
            components[i] = comp
            ok = True
            for m in range(a.n_morphisms):
                x, y = a.src[m], a.tgt[m]
                if components[x] is None or components[y] is None:
                    continue
                if b.compose(components[y], F.mor_map[m]) != \
                        b.compose(G.mor_map[m], components[x]):
                    ok = False
                    break
            if ok:
                backtrack(i + 1)
            components[i] = None

    backtrack(0)
    return results


def functor_category(a, b, object_cap=10_000, budget=None):
    """The category of functors a -> b and natural transformations.

    Returns ``(category, functors, transformations)``; the extra lists tie
    the abstract indices back to the concrete data.
    """
    functors = enumerate_functors(a, b, budget=budget)
    if len(functors) > object_cap:
        raise BoundExceeded(
            f"functor category would have {len(functors)} objects (cap {object_cap})",
            size=len(functors), bound=object_cap,
        )
    all_trans = []
    span = []
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for t in enumerate_nat_trans(F, G, budget=budget):
                span.append((i, j))
                all_trans.append(t)
    index = {(span[i], t.components): i for i, t in enumerate(all_trans)}
    identity = []
    for i, F in enumerate(functors):
        ident = tuple(b.identity[F.obj_map[x]] for x in range(a.n_objects))
        identity.append(index[((i, i), ident)])
    comp = {}
    for j2, t2 in enumerate(all_trans):
        for j1, t1 in enumerate(all_trans):
            if span[j1][1] == span[j2][0]:
                vert = tuple(
                    b.compose(t2.components[x], t1.components[x])
                    for x in range(a.n_objects)
                )
                comp[(j2, j1)] = index[((span[j1][0], span[j2][1]), vert)]
    cat = FinCat(
        objects=tuple(range(len(functors))),
        morphisms=tuple(range(len(all_trans))),
        src=tuple(s for s, _ in span),
        tgt=tuple(t for _, t in span),
        identity=tuple(identity),
        comp=comp,
        name=f"Fun({a.name},{b.name})",
    )
    return cat, functors, all_trans


# ---------------------------------------------------------------------------
# Categories of elements
# ---------------------------------------------------------------------------


class PresheafOnFinCat:
    """A contravariant set-valued functor on a finite category, as tables."""

    def __init__(self, cat, sets, actions):
        self.cat = cat
        self.sets = dict(sets)         # object index -> tuple of elements
        self.actions = dict(actions)   # morphism index -> dict (contravariant)

    def act(self, m, x):
        if self.cat.is_identity_mor(m):
            return x
        return self.actions[m][x]


def category_of_elements(presheaf):
    """The category of elements of a finite presheaf, with its projection.

    Objects are pairs (object, element); a morphism (a, x) -> (b, y) is a
    base morphism f : a -> b with f-restriction sending y back to x.  The
    projection functor forgets the element; it is the fibration along which
    weighted limits reduce to conical ones.
    """
    cat = presheaf.cat
    objects = [(a, x) for a in range(cat.n_objects) for x in presheaf.sets[a]]
    ob_index = {o: i for i, o in enumerate(objects)}
    morphisms, src, tgt, carrier = [], [], [], []
    for m in range(cat.n_morphisms):
        a, b = cat.src[m], cat.tgt[m]
        for y in presheaf.sets[b]:
            x = presheaf.act(m, y)
            morphisms.append((m, y))
            src.append(ob_index[(a, x)])
            tgt.append(ob_index[(b, y)])
            carrier.append(m)
    mor_index = {mo: i for i, mo in enumerate(morphisms)}
    identity = tuple(mor_index[(cat.identity[a], x)] for a, x in objects)

    def compose_rule(g, f):
        mg, yg = morphisms[g]
        mf, yf = morphisms[f]
        return mor_index[(cat.compose(mg, mf), yg)]

    el = FinCat(
        objects=tuple(objects),
        morphisms=tuple(morphisms),
        src=tuple(src),
        tgt=tuple(tgt),
        identity=identity,
        comp={},
        compose_rule=compose_rule,
        name=f"El({cat.name})",
    )
    projection = FinFunctor(el, cat,
                            tuple(a for a, _ in objects),
                            tuple(carrier), name="p")
    return el, projection
