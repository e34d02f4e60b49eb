import pytest
from hypothesis import given, strategies as st

from segalkit.delta import (MonotoneMap, TruncatedDelta, coface, codegeneracy,
                            enumerate_monotone, epi_mono_factor,
                            face_inclusion, identity, op_reindex)
from segalkit.errors import InvalidSubset


def test_enumerate_vertex_counts():
    for n in range(5):
        assert len(enumerate_monotone(0, n)) == n + 1


def test_enumerate_1_1_gives_three_maps():
    maps = enumerate_monotone(1, 1)
    assert sorted(m.values for m in maps) == [(0, 0), (0, 1), (1, 1)]


def test_terminal_rank_has_one_map():
    for m in range(5):
        assert len(enumerate_monotone(m, 0)) == 1


def test_enumeration_duplicate_free():
    maps = enumerate_monotone(3, 2)
    assert len(set(maps)) == len(maps)


def test_face_inclusion_identity():
    assert face_inclusion(range(4), 3).is_identity


def test_face_inclusion_equiv_legs():
    # the selectors used by the biinvertible-arrow pullback
    assert face_inclusion((0, 2), 3).values == (0, 2)
    assert face_inclusion((1, 3), 3).values == (1, 3)
    assert face_inclusion((1, 2), 3).values == (1, 2)


def test_face_inclusion_rejects_empty():
    with pytest.raises(InvalidSubset):
        face_inclusion((), 2)
    with pytest.raises(InvalidSubset):
        face_inclusion((4,), 2)


def test_op_swaps_outer_cofaces():
    assert op_reindex(coface(1, 0)) == coface(1, 1)
    assert op_reindex(identity(3)) == identity(3)


@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_op_is_involutive(m, n, data):
    maps = enumerate_monotone(m, n)
    f = data.draw(st.sampled_from(maps))
    assert op_reindex(op_reindex(f)) == f


def test_op_preserves_composition_exhaustively():
    delta = TruncatedDelta(3)
    for g, f in delta.composable_pairs():
        assert op_reindex(g.after(f)) == op_reindex(g).after(op_reindex(f))


def test_epi_mono_factorisation_unique():
    for m in range(5):
        for n in range(5):
            for f in enumerate_monotone(m, n):
                epi, mono = epi_mono_factor(f)
                assert epi.is_surjective and mono.is_injective
                assert mono.after(epi) == f
                # uniqueness: the image determines the factorisation
                others = [
                    (e, d)
                    for d in enumerate_monotone(mono.src, n)
                    if d.is_injective
                    for e in enumerate_monotone(m, mono.src)
                    if e.is_surjective and d.after(e) == f
                ]
                assert others == [(epi, mono)]


def test_truncated_delta_closed_and_associative():
    cat = TruncatedDelta(2).as_fincat()
    assert cat.validate()


def test_codegeneracy_composes_with_cofaces():
    # simplicial identity sigma_i . delta_i = id
    for n in range(3):
        for i in range(n + 1):
            assert codegeneracy(n, i).after(coface(n + 1, i)) == identity(n)
