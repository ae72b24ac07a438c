import pytest

from mgalg.chains import ChainCoordinates, build_chain
from mgalg.core import build_algebra, classify, enumerate_algebras
from mgalg.errors import InvalidInput, NotFSI
from mgalg.varieties import (VarietyTag, chain_embedding, discriminator_check,
                             dual_membership, height_params, membership,
                             width_of)


def _square(image):
    return build_algebra((4, [(0, 1), (0, 2), (1, 3), (2, 3)]), image)


def test_variety_tags():
    assert str(VarietyTag('W', 1)) == 'W_1'
    assert VarietyTag('HE', 3).identity().name == 'HE_3'
    with pytest.raises(InvalidInput):
        VarietyTag('Q', 1)
    with pytest.raises(InvalidInput):
        VarietyTag('W', 0)
    with pytest.raises(InvalidInput):
        VarietyTag('H', 1)


def test_width_examples():
    chain = build_chain(ChainCoordinates(2, (0, 1)))
    assert width_of(chain).width == 1
    square = _square([0, 3])
    report = width_of(square)
    assert report.width == 2
    assert len(report.orthogonal_set) == 2
    assert len(report.prime_generators) == 2
    with pytest.raises(NotFSI):
        width_of(_square([0, 1, 2, 3]))


def test_width_census(corpus6):
    widths = {}
    for a in corpus6:
        if not classify(a).fsi:
            continue
        w = width_of(a).width
        widths[w] = widths.get(w, 0) + 1
    assert widths == {1: 31, 2: 8}


def test_chain_embedding_structure():
    square = _square([0, 3])
    emb = chain_embedding(square)
    assert emb.width == 2
    assert len(emb.factors) == 2
    assert all(f.lat.is_chain for f in emb.factors)
    assert emb.witness.godel_only and emb.witness.injective
    assert all(emb.image_injections)


def test_height_examples():
    assert height_params(build_chain(ChainCoordinates(2, (0, 1)))) == (4, 3)
    assert height_params(build_chain(ChainCoordinates(1, (0, 0)))) == (3, 3)
    assert height_params(build_chain(ChainCoordinates(0, (0,)))) == (2, 2)
    assert height_params(_square([0, 3])) == (2, 2)
    assert height_params(_square([0, 1, 2, 3])) == (2, 2)


def test_membership_against_dual_criterion(corpus6):
    tags = [VarietyTag('W', 1), VarietyTag('W', 2),
            VarietyTag('H', 2), VarietyTag('H', 3),
            VarietyTag('HE', 2), VarietyTag('HE', 3)]
    for a in corpus6:
        if a.n > 5:
            continue
        for tag in tags:
            holds, cex = membership(a, tag)
            assert holds == dual_membership(a, tag), (a.n, str(tag), cex)


def test_w1_membership_examples():
    w1 = VarietyTag('W', 1)
    assert membership(build_chain(ChainCoordinates(3, (0, 1, 0))), w1)[0]
    holds, cex = membership(_square([0, 3]), w1)
    assert not holds and set(cex) == {'x1', 'x2'}
    assert membership(_square([0, 3]), VarietyTag('W', 2))[0]


def test_discriminator_examples():
    simple = build_chain(ChainCoordinates(2, (2,)))
    ok, details = discriminator_check(simple)
    assert ok and details is None
    non_simple = build_chain(ChainCoordinates(2, (1, 0)))
    ok, details = discriminator_check(non_simple)
    assert not ok
    assert set(details) == {'x', 'y', 'z', 'got', 'expected'}


def test_discriminator_characterizes_simple(corpus6):
    for a in corpus6:
        if a.n > 4:
            continue
        realized, _ = discriminator_check(a)
        assert realized == (classify(a).simple or a.n == 1)


def test_enumeration_matches_classification():
    for a in enumerate_algebras(5):
        c = classify(a)
        assert c.fsi == a.image_is_chain()
        assert c.simple == (c.fsi and len(a.exists_image) == 2)
