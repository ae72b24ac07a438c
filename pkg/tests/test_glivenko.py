import pytest

from mgalg.chains import ChainCoordinates, build_chain
from mgalg.core import build_algebra, classify
from mgalg.errors import NotInW1
from mgalg.glivenko import (d_forall_filter, glivenko_hom, quotient_by_d_forall,
                            reg_forall_algebra, special_elements)
from mgalg.varieties import VarietyTag, membership


def test_special_elements_on_gapped_chain():
    a = build_chain(ChainCoordinates(2, (0, 1)))
    se = special_elements(a)
    assert [a.label(x) for x in se.dense] == ['a1', 'a2', 'a3']
    assert [a.label(x) for x in se.regular] == ['a0', 'a3']
    assert se.boolean == se.regular


def test_dense_forall_filter_and_quotient():
    a = build_chain(ChainCoordinates(2, (0, 1)))
    members = d_forall_filter(a)
    assert [a.label(x) for x in members] == ['a1', 'a2', 'a3']
    quo, witness = quotient_by_d_forall(a)
    assert quo.n == 2
    assert witness.surjective
    assert membership(quo, VarietyTag('HE', 2))[0]


def test_collapse_map_example():
    a = build_chain(ChainCoordinates(2, (0, 1)))
    report = glivenko_hom(a)
    assert report.collapse.n == 2
    labels = {a.label(x): report.collapse.label(report.hom.mapping[x])
              for x in range(a.n)}
    assert labels == {'a0': 'a0', 'a1': 'a3', 'a2': 'a3', 'a3': 'a3'}
    assert report.kernel == d_forall_filter(a)
    assert report.quotient_iso.is_isomorphism
    assert report.semisimple


def test_collapse_requires_width_one():
    square = build_algebra((4, [(0, 1), (0, 2), (1, 3), (2, 3)]), [0, 3],
                           labels=['{}', '{0}', '{1}', '{0,1}'])
    with pytest.raises(NotInW1) as err:
        reg_forall_algebra(square)
    assert err.value.details['counterexample'] == {'x1': '{0}', 'x2': '{1}'}


def test_collapse_on_w1_corpus(corpus6):
    seen = 0
    for a in corpus6:
        if not membership(a, VarietyTag('W', 1))[0]:
            continue
        seen += 1
        report = glivenko_hom(a)
        assert report.hom.surjective
        assert report.quotient_iso.is_isomorphism
        assert report.semisimple
        se = special_elements(a)
        assert set(report.collapse.exists_image) <= set(range(report.collapse.n))
        regular_labels = {a.label(x) for x in se.regular}
        image_labels = {report.collapse.label(c)
                        for c in report.collapse.exists_image}
        assert image_labels == regular_labels
    assert seen >= 30


def test_collapse_of_simple_is_identity_map():
    a = build_chain(ChainCoordinates(2, (2,)))
    assert classify(a).simple
    report = glivenko_hom(a)
    assert report.collapse.n == a.n
    assert report.hom.mapping == tuple(range(a.n))
    assert report.kernel == (a.top,)
    assert report.quotient.n == a.n
