"""Independent brute-force verifiers used as ground truth.

Every certificate either passes or carries a concrete counterexample; a
blown search budget is a hard failure, never a silent pass.  The limit
verifier re-enumerates cones along a deliberately different traversal from
the constructive search (fixed object order, no propagation ordering), so
the two code paths only agree when the mathematics does.
"""

from itertools import product as iproduct

from .errors import Budget, SearchBudgetExceeded
from .fincat import FinCat, FinFunctor, enumerate_functors
from .delta import identity as delta_identity


class Certificate:
    """Outcome of one verification claim."""

    def __init__(self, claim, ok, log=None, counterexample=None):
        self.claim = claim
        self.ok = bool(ok)
        self.log = log or []
        self.counterexample = counterexample
        if not self.ok:
            assert counterexample is not None, \
                "a failing certificate must carry a counterexample"

    def as_dict(self):
        return {
            "claim": self.claim,
            "ok": self.ok,
            "log": list(self.log),
            "counterexample": repr(self.counterexample)
            if self.counterexample is not None else None,
        }

    def __repr__(self):
        return f"Certificate({self.claim!r}, {'pass' if self.ok else 'FAIL'})"


def _naive_cones_from_point(diagram, budget=None):
    """All cones over the diagram with a one-point apex, by depth-first
    assignment in fixed object order with full constraint re-checking."""
    shape = diagram.shape
    n = shape.n_objects
    arrows = [
        (shape.src[m], shape.tgt[m], diagram.value_on(m))
        for m in range(shape.n_morphisms)
        if not shape.is_identity_mor(m)
    ]
    out = []
    assign = [None] * n

    def rec(j):
        if budget is not None:
            budget.tick()
        if j == n:
            out.append(tuple(assign))
            return
        for x in diagram.obs[j].elements:
            assign[j] = x
            ok = True
            for a, b, mor in arrows:
                if a <= j and b <= j and assign[a] is not None and assign[b] is not None:
                    if mor(assign[a]) != assign[b]:
                        ok = False
                        break
            if ok:
                rec(j + 1)
        assign[j] = None

    rec(0)
    return out


def verify_limit(result, diagram=None, budget=None, extra_cones=None):
    """Certify a computed limit: legs commute, point-cones biject with apex
    elements, and every supplied competing cone factors uniquely."""
    diagram = diagram or result.diagram
    log = []
    shape = diagram.shape

    for m in range(shape.n_morphisms):
        if shape.is_identity_mor(m):
            continue
        a, b = shape.src[m], shape.tgt[m]
        mor = diagram.value_on(m)
        for elem in result.apex.elements:
            if mor(result.legs[a](elem)) != result.legs[b](elem):
                return Certificate("limit-cone-commutes", False,
                                   counterexample=(m, elem))
    log.append(f"cone commutes over {shape.n_morphisms} arrows")

    naive = _naive_cones_from_point(diagram, budget=budget)
    computed = {tuple(fam[j] for j in range(shape.n_objects))
                for fam in result.families}
    if set(naive) != computed:
        diff = set(naive) ^ computed
        return Certificate("limit-point-cones", False,
                           counterexample=sorted(diff)[:3],
                           log=log)
    log.append(f"{len(naive)} point-cones match the apex exactly")

    for cone in (extra_cones or []):
        factoring = result.factor_cone(cone)
        if factoring is None:
            return Certificate("limit-factorization", False,
                               counterexample=cone, log=log)
        for j, leg in cone.items():
            if result.legs[j].after(factoring) != leg:
                return Certificate("limit-factorization", False,
                                   counterexample=(j, cone), log=log)
        # uniqueness: any other map with the same composites must coincide
        test = factoring.src
        for elem in test.elements:
            target = factoring(elem)
            for other in result.apex.elements:
                if other == target:
                    continue
                if all(result.legs[j](other) == cone[j](elem) for j in cone):
                    return Certificate("limit-uniqueness", False,
                                       counterexample=(elem, other), log=log)
    if extra_cones:
        log.append(f"{len(extra_cones)} competing cones factor uniquely")
    return Certificate("limit-ump", True, log=log)


def verify_adjunction(n, x, y, budget=None, perturb=False):
    """Triangle identities for the copower/evaluation adjunction at rank n
    with a constant left input, checked elementwise.

    The left functor tensors the n-simplex with a constant object; the
    right evaluates at level n.  The unit tags a point with the identity
    simplex; the counit acts by the simplex operator.  With ``perturb``
    the unit is deliberately damaged, which must produce a failure.
    """
    from .constructions import tensor
    from .externalize import InternalFunctor
    from .fincat import SetMor
    from .internal import InternalCategory, constant_object, standard_simplex

    ycat = y if isinstance(y, InternalCategory) else InternalCategory(y)
    base = ycat.base
    k = ycat.x.k
    simplex = standard_simplex(n, k)
    log = []

    c_obj = x if not hasattr(x, "levels") else x.levels[0]
    ident = delta_identity(n)
    other = simplex.level(n)[0] if perturb and simplex.level(n)[0] != ident \
        else ident

    def unit(c):
        return (other if perturb else ident, c)

    yn = ycat.x.levels[n]

    # the counit is a genuine internal functor (naturality is a theorem of
    # the operator calculus; validate() re-proves it on this instance)
    t_on_yn = tensor(simplex, constant_object(base, yn, k))
    counit = InternalFunctor(t_on_yn, ycat.x, {
        l: SetMor(t_on_yn.levels[l], ycat.x.levels[l],
                  {(a, ye): ycat.x.act(a, ye) for (a, ye) in t_on_yn.levels[l]})
        for l in range(k + 1)
    })
    try:
        counit.validate()
    except AssertionError as exc:
        return Certificate("adjunction-counit-natural", False,
                           counterexample=str(exc), log=log)
    log.append("counit is natural for every operator")

    # triangle 1: counit at the tensor composed with the tensored unit is
    # the identity of the tensor on the constant object
    t_on_c = tensor(simplex, constant_object(base, c_obj, k))
    for l in range(k + 1):
        for (a, c) in t_on_c.levels[l]:
            if budget is not None:
                budget.tick()
            tagged = (a, unit(c))           # image under the tensored unit
            back = (tagged[1][0].after(a), tagged[1][1])   # counit at L(C)
            if back != (a, c):
                return Certificate("adjunction-triangle-tensor", False,
                                   counterexample=((a.key(), c), back), log=log)
    log.append("tensor-side triangle holds on every cell")

    # triangle 2: evaluation of the counit after the unit is the identity
    for ye in yn:
        step = ycat.x.act(unit(ye)[0], ye)
        if step != ye:
            return Certificate("adjunction-triangle-ev", False,
                               counterexample=ye, log=log)
    log.append(f"evaluation triangle holds on {len(yn)} points")

    # hom-bijection naturality in the simplex rank is certified by
    # constructions.adjunction_naturality; here we recheck the bijection
    # cardinalities through the fully explicit transposes.
    from .constructions import adjunction_check
    report = adjunction_check(n, constant_object(base, c_obj, k), ycat,
                              budget=budget)
    if not report.bijective:
        return Certificate("adjunction-bijection", False,
                           counterexample=report.counts(), log=log)
    expected = base.hom_count(c_obj, yn)
    if len(report.left) != expected:
        return Certificate("adjunction-copower-count", False,
                           counterexample=(len(report.left), expected), log=log)
    log.append(f"hom sets biject with the {expected} points of level {n}")
    return Certificate("adjunction", True, log=log)


class EquivalenceReport:
    def __init__(self, ok, witness, certificate):
        self.ok = ok
        self.witness = witness
        self.certificate = certificate


def equivalent_categories(a, b, budget=None):
    """Search for a functor a -> b that is full, faithful and essentially
    surjective (isomorphism-closure computed on the nose)."""
    budget = budget or Budget(500_000, "equivalence search")
    log = []

    iso_classes_b = []
    seen = set()
    for obj in range(b.n_objects):
        if obj in seen:
            continue
        cls = {obj}
        for m in b.iso_morphisms():
            if b.src[m] == obj:
                cls.add(b.tgt[m])
        seen |= cls
        iso_classes_b.append(cls)

    try:
        functors = enumerate_functors(a, b, budget=budget)
    except SearchBudgetExceeded:
        raise
    log.append(f"searched {len(functors)} functors")
    for f in functors:
        image = set(f.obj_map)
        if not all(cls & image for cls in iso_classes_b):
            continue
        ff = True
        for x in range(a.n_objects):
            for y in range(a.n_objects):
                dom = a.hom(x, y)
                cod = b.hom(f.obj_map[x], f.obj_map[y])
                mapped = [f.mor_map[m] for m in dom]
                if len(set(mapped)) != len(dom) or set(mapped) != set(cod):
                    ff = False
                    break
            if not ff:
                break
        if ff:
            cert = Certificate("equivalence", True, log=log)
            return EquivalenceReport(True, f, cert)
    cert = Certificate("equivalence", False, log=log,
                       counterexample=f"no ff+eso functor {a.name} -> {b.name}")
    return EquivalenceReport(False, None, cert)
