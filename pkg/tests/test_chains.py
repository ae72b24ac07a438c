from fractions import Fraction

import pytest

from mgalg.chains import (ChainCoordinates, all_coordinates, build_chain,
                          char_chain_embedding, non_local_finite_witness)
from mgalg.core import find_isomorphism
from mgalg.errors import InvalidCoordinates, InvalidInput, TruncationTooShort


def test_coordinate_parsing_and_display():
    c = ChainCoordinates.parse('2,0,1')
    assert (c.m, c.parts) == (2, (0, 1))
    assert c.display() == '(2,(0,1))'
    assert c.size == 4
    assert c.image_positions() == (0, 1, 3)
    bare = ChainCoordinates.parse('3')
    assert bare.parts == (3,)
    assert bare.image_positions() == (0, 4)


def test_invalid_coordinates():
    with pytest.raises(InvalidCoordinates):
        ChainCoordinates(2, (1, 2))
    with pytest.raises(InvalidCoordinates):
        ChainCoordinates(1, ())
    with pytest.raises(InvalidCoordinates):
        ChainCoordinates(-1, (0,))
    with pytest.raises(InvalidCoordinates):
        ChainCoordinates.parse('a,b')


def test_all_coordinates_census():
    coords = all_coordinates(4)
    assert len(coords) == 31
    by_m = {}
    for c in coords:
        by_m[c.m] = by_m.get(c.m, 0) + 1
    assert by_m == {0: 1, 1: 2, 2: 4, 3: 8, 4: 16}
    assert len({(c.m, c.parts) for c in coords}) == 31


def test_build_chain_image():
    a = build_chain(ChainCoordinates(2, (0, 1)))
    assert a.n == 4
    assert a.exists_image == (0, 1, 3)
    assert a.ex[2] == 3 and a.fa[2] == 1
    assert a.label(2) == 'a2'


def test_coordinate_chains_pairwise_distinct():
    small = [build_chain(c) for c in all_coordinates(3)]
    for i, a in enumerate(small):
        for b in small[i + 1:]:
            assert find_isomorphism(a, b) is None
    c210 = build_chain(ChainCoordinates(2, (1, 0)))
    c201 = build_chain(ChainCoordinates(2, (0, 1)))
    assert find_isomorphism(c210, c201) is None
    assert find_isomorphism(c210, build_chain(ChainCoordinates(2, (1, 0)))) is not None


def test_char_chain_embedding_round_trip():
    emb = char_chain_embedding(ChainCoordinates(2, (0, 1)))
    assert emb.witness.surjective
    assert emb.subalgebra.n == len(emb.elements)
    assert emb.target.n == 4
    onto = sorted(set(emb.witness.mapping))
    assert onto == list(range(4))


def test_witness_sequence_exact_values():
    seq = non_local_finite_witness(3, 5)
    assert seq[0] == (Fraction(0), Fraction(1, 2), Fraction(2, 3),
                      Fraction(3, 4), Fraction(4, 5))
    assert seq[1][0] == Fraction(1)
    assert seq[2][:2] == (Fraction(1), Fraction(1))
    assert len(set(seq)) == 3


def test_witness_guards():
    with pytest.raises(TruncationTooShort) as err:
        non_local_finite_witness(4, 4)
    assert err.value.details == {'k': 4, 'truncation': 4}
    with pytest.raises(InvalidInput):
        non_local_finite_witness(0, 5)
