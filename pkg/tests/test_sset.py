import pytest

from segalkit.delta import MonotoneMap, codegeneracy
from segalkit.errors import Unrepresentable
from segalkit.fincat import chain_cat, cyclic_group_cat, discrete_cat, \
    poset_cat, terminal_cat
from segalkit.sset import (GroupoidPresentation, biinvertible_weight,
                           boundary, collapse_edges, invertible_edges,
                           k_core, nerve_sset, product_sset, spine,
                           sset_hom, standard_simplex, zigzag_weight)


def walking_iso_cat():
    """Two objects with mutually inverse arrows between them."""
    from segalkit.fincat import FinCat
    return FinCat(
        objects=("a", "b"),
        morphisms=("id_a", "id_b", "f", "g"),
        src=(0, 1, 0, 1),
        tgt=(0, 1, 1, 0),
        identity=(0, 1),
        comp={(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3,
              (0, 3): 3, (3, 2): 0, (2, 3): 1},
        name="I[1]",
    )


def test_shapes_satisfy_simplicial_identities():
    for shape in (standard_simplex(3, 3), spine(3, 3), boundary(2, 3),
                  biinvertible_weight(3), zigzag_weight(3),
                  product_sset(standard_simplex(1, 3), standard_simplex(2, 3))):
        assert shape.validate()


def test_nerve_of_terminal_is_point():
    n = nerve_sset(terminal_cat(), 3)
    assert [n.size(m) for m in range(4)] == [1, 1, 1, 1]


def test_nerve_of_chain_is_simplex():
    n = nerve_sset(chain_cat(2), 3)
    d = standard_simplex(2, 3)
    assert [n.size(m) for m in range(4)] == [d.size(m) for m in range(4)]


def test_nerve_of_walking_iso_chain_counts():
    cat = walking_iso_cat()
    cat.validate()
    n = nerve_sset(cat, 3)
    # chains counted directly: level m has 2 * 2^m words
    counts = [n.size(m) for m in range(4)]
    direct = []
    for m in range(4):
        if m == 0:
            direct.append(2)
        else:
            total = 0
            for start in range(cat.n_objects):
                frontier = [start]
                for _ in range(m):
                    frontier = [cat.tgt[mm] for x in frontier
                                for mm in cat.out_of(x)]
                total += len(frontier)
            direct.append(total)
    assert counts == direct


def test_nerves_are_two_coskeletal():
    # every compatible 3-cell boundary has exactly one filler
    from itertools import product as iproduct

    from segalkit.delta import face_inclusion

    def simplex_face(rank, i):
        return face_inclusion(tuple(j for j in range(rank + 1) if j != i), rank)

    for cat in (chain_cat(2), cyclic_group_cat(2), walking_iso_cat()):
        n = nerve_sset(cat, 3)
        faces3 = [simplex_face(3, i) for i in range(4)]
        fillers = {}
        for x in n.level(3):
            key = tuple(n.act(fc, x) for fc in faces3)
            assert key not in fillers, "two 3-cells share a boundary"
            fillers[key] = x
        compatible = 0
        for combo in iproduct(n.level(2), repeat=4):
            ok = True
            for i in range(4):
                for j in range(i + 1, 4):
                    # d_i d_j = d_{j-1} d_i on the boundary tuple
                    if n.act(simplex_face(2, i), combo[j]) != \
                            n.act(simplex_face(2, j - 1), combo[i]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                compatible += 1
                assert combo in fillers
        assert compatible == n.size(3)


def test_sset_hom_point_to_simplex():
    for n in range(4):
        maps = sset_hom(standard_simplex(0, 3), standard_simplex(n, 3))
        assert len(maps) == n + 1


def test_sset_hom_edge_into_nerve_is_morphisms():
    cat = chain_cat(2)
    maps = sset_hom(standard_simplex(1, 3), nerve_sset(cat, 3))
    assert len(maps) == cat.n_morphisms


def test_sset_hom_spine_into_nerve_is_composable_pairs():
    cat = chain_cat(2)
    maps = sset_hom(spine(2, 3), nerve_sset(cat, 3))
    pairs = sum(1 for _ in cat.composable_pairs())
    assert len(maps) == pairs


def test_sset_hom_simplex_is_level():
    n = nerve_sset(chain_cat(2), 3)
    for rank in range(4):
        maps = sset_hom(standard_simplex(rank, 3), n)
        assert len(maps) == n.size(rank)
        # naturally: evaluation at the top cell is a bijection
        from segalkit.delta import identity as did
        values = {m.at(rank, did(rank)) for m in maps}
        assert values == set(n.level(rank))


def test_k_core_of_walking_iso_is_unchanged():
    n = nerve_sset(walking_iso_cat(), 3)
    c = k_core(n)
    assert [c.size(m) for m in range(4)] == [n.size(m) for m in range(4)]


def test_k_core_of_interval_is_two_points():
    n = nerve_sset(chain_cat(1), 3)
    c = k_core(n)
    assert [c.size(m) for m in range(4)] == [2, 2, 2, 2]


def test_k_core_of_group_nerve_is_identity():
    n = nerve_sset(cyclic_group_cat(3), 3)
    c = k_core(n)
    assert [c.size(m) for m in range(4)] == [n.size(m) for m in range(4)]


def test_k_core_matches_direct_iso_search():
    for cat in (chain_cat(2), cyclic_group_cat(2), walking_iso_cat()):
        n = nerve_sset(cat, 3)
        c = k_core(n)
        sub = cat.max_subgroupoid()
        ns = nerve_sset(sub, 3)
        assert [c.size(m) for m in range(4)] == [ns.size(m) for m in range(4)]


def test_groupoid_presentation_maps_are_iso_chains():
    n = nerve_sset(cyclic_group_cat(2), 3)
    maps = sset_hom(GroupoidPresentation(2), n)
    assert len(maps) == 4      # pairs of group elements


def test_k_core_rejects_non_nerves():
    with pytest.raises(Unrepresentable):
        k_core(boundary(2, 3))


def test_collapse_edges_of_triangle():
    d2 = standard_simplex(2, 2)
    q = collapse_edges(d2, [MonotoneMap(1, 2, (0, 1))])
    assert q.validate()
    assert q.size(0) == 2       # vertices 0,1 merged


def test_biinvertible_weight_levels():
    w = biinvertible_weight(3)
    assert w.size(0) == 2
    assert w.validate()


def test_invertible_edges_of_nerves():
    assert len(invertible_edges(nerve_sset(chain_cat(1), 3))) == 2
    assert len(invertible_edges(nerve_sset(cyclic_group_cat(2), 3))) == 2
    assert len(invertible_edges(nerve_sset(walking_iso_cat(), 3))) == 4
