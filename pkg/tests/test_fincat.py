import pytest

from segalkit.errors import BoundExceeded
from segalkit.fincat import (FinCat, FinSetBase, SetDiagram, SetMor, SetObj,
                             chain_cat, cyclic_group_cat, discrete_cat,
                             enumerate_functors, enumerate_nat_trans,
                             finite_coproduct, finite_limit, functor_category,
                             identity_mor, poset_cat, product_cat,
                             terminal_cat, PresheafOnFinCat,
                             category_of_elements)
from segalkit.oracle import verify_limit

BASE = FinSetBase(bound=512)


def span_shape():
    """The pullback shape . -> . <- . as a finite category."""
    return FinCat(
        objects=("a", "m", "b"),
        morphisms=("id_a", "id_m", "id_b", "f", "g"),
        src=(0, 1, 2, 0, 2),
        tgt=(0, 1, 2, 1, 1),
        identity=(0, 1, 2),
        comp={(0, 0): 0, (1, 1): 1, (2, 2): 2,
              (3, 0): 3, (1, 3): 3, (4, 2): 4, (1, 4): 4},
        name="cospan",
    )


def test_standard_cats_validate():
    for cat in (chain_cat(2), discrete_cat("abc"), cyclic_group_cat(3),
                terminal_cat(), product_cat(chain_cat(1), chain_cat(1))):
        assert cat.validate()


def test_binary_product_cardinality():
    shape = discrete_cat((0, 1))
    a = BASE.obj("A", ("a", "b"))
    b = BASE.obj("B", ("c", "d"))
    result = finite_limit(SetDiagram(shape, {0: a, 1: b}, {}, base=BASE))
    assert len(result.apex) == 4
    assert verify_limit(result).ok


def test_equalizer_of_identities_is_everything():
    shape = FinCat(
        objects=("x", "y"), morphisms=("ix", "iy", "u", "v"),
        src=(0, 1, 0, 0), tgt=(0, 1, 1, 1), identity=(0, 1),
        comp={(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 0): 3, (1, 3): 3},
        name="parallel-shape",
    )
    s = BASE.obj("S", (0, 1, 2))
    ident = identity_mor(s)
    diagram = SetDiagram(shape, {0: s, 1: s}, {2: ident, 3: ident}, base=BASE)
    result = finite_limit(diagram)
    assert len(result.apex) == 3
    assert verify_limit(result).ok


def test_pullback_of_overlapping_injections():
    two_a = BASE.obj("A", ("a0", "a1"))
    two_b = BASE.obj("B", ("b0", "b1"))
    three = BASE.obj("M", (0, 1, 2))
    f = SetMor(two_a, three, {"a0": 0, "a1": 1})
    g = SetMor(two_b, three, {"b0": 1, "b1": 2})
    diagram = SetDiagram(span_shape(), {0: two_a, 1: three, 2: two_b},
                         {3: f, 4: g}, base=BASE)
    result = finite_limit(diagram)
    # images overlap exactly in {1}
    assert len(result.apex) == 1
    fam = result.families[0]
    assert fam[0] == "a1" and fam[2] == "b0"
    # certified against the independent cone enumeration plus external cones
    test_obj = BASE.obj("T", ("t",))
    cone = {0: SetMor(test_obj, two_a, {"t": "a1"}),
            1: SetMor(test_obj, three, {"t": 1}),
            2: SetMor(test_obj, two_b, {"t": "b0"})}
    assert verify_limit(result, extra_cones=[cone]).ok


def test_limit_bound_reported_not_truncated():
    small = FinSetBase(bound=3)
    shape = discrete_cat((0, 1))
    a = small.obj("A", (0, 1))
    with pytest.raises(BoundExceeded):
        finite_limit(SetDiagram(shape, {0: a, 1: a}, {}, base=small),
                     base=small)


def test_coproduct_unit_law():
    s = BASE.obj("S", ("x", "y"))
    empty = BASE.initial()
    result = finite_coproduct(BASE, [empty, s])
    assert len(result.obj) == len(s)


def test_coproduct_of_two_points_is_two():
    star = BASE.terminal()
    result = finite_coproduct(BASE, [star, star])
    assert len(result.obj) == 2


def test_coproduct_injections_disjoint_and_jointly_surjective():
    parts = [BASE.obj("P1", ("a", "b")), BASE.obj("P2", ("c",)),
             BASE.obj("P3", ("d", "e"))]
    result = finite_coproduct(BASE, parts)
    assert len(result.obj) == 5
    images = [set(inj.mapping.values()) for inj in result.injections]
    assert set().union(*images) == set(result.obj.elements)
    for i, left in enumerate(images):
        for right in images[i + 1:]:
            assert not (left & right)
    # copairing exists and is unique: any map out is determined by its legs
    target = BASE.obj("T", (0, 1))
    legs = [SetMor(p, target, {x: 0 for x in p}) for p in parts]
    copair = BASE.copair(result, legs)
    for i, inj in enumerate(result.injections):
        assert copair.after(inj) == legs[i]


def test_functor_category_terminal_exponent():
    b = chain_cat(2)
    cat, functors, _ = functor_category(terminal_cat(), b)
    assert cat.n_objects == b.n_objects
    assert cat.n_morphisms == b.n_morphisms


def test_functor_category_of_arrows_is_three_object():
    cat, functors, transes = functor_category(chain_cat(1), chain_cat(1))
    assert cat.n_objects == 3          # the three monotone endomaps
    assert cat.validate()
    # commutative-square structure: a terminal and an initial functor
    assert sum(1 for m in range(cat.n_morphisms)
               if not cat.is_identity_mor(m)) == 3


def test_functor_category_discrete_pair_is_product():
    b = chain_cat(1)
    cat, functors, _ = functor_category(discrete_cat((0, 1)), b)
    prod = product_cat(b, b)
    assert cat.n_objects == prod.n_objects
    assert cat.n_morphisms == prod.n_morphisms


def test_functor_count_matches_direct_enumeration():
    a, b = chain_cat(1), chain_cat(2)

    def brute():
        count = 0
        from itertools import product as iproduct
        for o0 in range(b.n_objects):
            for o1 in range(b.n_objects):
                for m in b.hom(o0, o1):
                    count += 1
        return count

    assert len(enumerate_functors(a, b)) == brute()


def test_nat_trans_enumeration_identity_present():
    a = chain_cat(1)
    functors = enumerate_functors(a, a)
    for f in functors:
        transes = enumerate_nat_trans(f, f)
        identities = [t for t in transes
                      if all(a.is_identity_mor(c) for c in t.components)]
        assert len(identities) == 1
        for t in transes:
            assert t.validate()


def _delta_presheaf(weight):
    from segalkit.delta import TruncatedDelta, enumerate_monotone
    delta_cat = TruncatedDelta(weight.k).as_fincat()
    maps = sorted(
        (phi for phi in TruncatedDelta(weight.k).all_maps()),
        key=lambda f: (f.src, f.tgt, f.values),
    )
    sets = {n: weight.level(n) for n in range(weight.k + 1)}
    actions = {}
    for i, phi in enumerate(maps):
        actions[i] = {x: weight.act(phi, x) for x in weight.level(phi.tgt)}
    return PresheafOnFinCat(delta_cat, sets, actions)


def test_elements_of_representable_has_terminal():
    from segalkit.sset import standard_simplex
    pre = _delta_presheaf(standard_simplex(2, 2))
    el, projection = category_of_elements(pre)
    # a terminal object: exactly one morphism in from every object
    terminals = [o for o in range(el.n_objects)
                 if all(len(el.hom(a, o)) == 1 for a in range(el.n_objects))]
    assert len(terminals) == 1
    a, x = el.objects[terminals[0]]
    assert x.is_identity


def test_elements_of_constant_presheaf_is_base():
    from segalkit.delta import TruncatedDelta
    delta_cat = TruncatedDelta(1).as_fincat()
    pre = PresheafOnFinCat(
        delta_cat,
        {n: ("*",) for n in range(delta_cat.n_objects)},
        {m: {"*": "*"} for m in range(delta_cat.n_morphisms)},
    )
    el, _ = category_of_elements(pre)
    assert el.n_objects == delta_cat.n_objects
    assert el.n_morphisms == delta_cat.n_morphisms


def test_elements_of_spine_counts():
    from segalkit.delta import codegeneracy
    from segalkit.sset import spine
    sp = spine(2, 1)     # truncated at level 1: two edges, three vertices
    pre = _delta_presheaf(sp)
    el, _ = category_of_elements(pre)
    assert el.n_objects == sp.size(0) + sp.size(1) == 3 + 5
    degenerate = {sp.act(codegeneracy(0, 0), v) for v in sp.level(0)}
    nondeg = [x for x in sp.level(1) if x not in degenerate]
    # two edges and three vertices of nondegenerate structure
    assert len(nondeg) + sp.size(0) == 5
