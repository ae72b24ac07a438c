import pytest

from mgalg.config import Config
from mgalg.errors import (BoundExceeded, InvalidCoordinates, InvalidInput,
                          OutOfRange)
from mgalg.chains import ChainCoordinates
from mgalg.free import (LabeledFunction, build_exists_pi, count_checks, covers,
                        enumerate_functions, enumerate_im, expand_to_pi,
                        free_algebra, required_values,
                        segment_isomorphism_report, separation_fixpoint,
                        surjection_count)
from mgalg.terms import catalog, check_identity
from mgalg.varieties import VarietyTag, membership

RANK1_DISPLAYS = [
    '(0,(0);a0)', '(0,(0);a1)', '(1,(0,0);a1)', '(1,(1);a1)',
    '(2,(0,1);a2)', '(2,(1,0);a1)', '(3,(0,1,0);a2)',
]


def test_admissible_parts_for_rank_one():
    assert enumerate_im(1, 0) == [(0,)]
    assert enumerate_im(1, 1) == [(0, 0), (1,)]
    assert enumerate_im(1, 2) == [(0, 1), (1, 0)]
    assert enumerate_im(1, 3) == [(0, 1, 0)]
    with pytest.raises(OutOfRange):
        enumerate_im(1, 4)
    with pytest.raises(OutOfRange):
        enumerate_im(1, -1)
    with pytest.raises(InvalidInput):
        enumerate_im(-1, 0)


def test_rank_one_function_census():
    forest = build_exists_pi(1)
    assert [f.display() for f in forest.nodes] == RANK1_DISPLAYS
    assert [forest.nodes[i].display() for i in forest.minimal] == \
        ['(0,(0);a0)', '(0,(0);a1)', '(1,(1);a1)']
    assert [forest.nodes[i].display() for i in forest.maximal] == \
        ['(0,(0);a0)', '(1,(0,0);a1)', '(2,(1,0);a1)', '(3,(0,1,0);a2)']


def test_rank_one_cover_structure():
    forest = build_exists_pi(1)
    parent = {forest.nodes[i].display():
              (None if forest.parent[i] < 0
               else forest.nodes[forest.parent[i]].display())
              for i in range(len(forest.nodes))}
    assert parent == {
        '(0,(0);a0)': None,
        '(0,(0);a1)': None,
        '(1,(0,0);a1)': '(0,(0);a1)',
        '(1,(1);a1)': None,
        '(2,(0,1);a2)': '(0,(0);a1)',
        '(2,(1,0);a1)': '(1,(1);a1)',
        '(3,(0,1,0);a2)': '(2,(0,1);a2)',
    }
    assert len(forest.node_index()) == 7


def test_cover_relation_examples():
    root = LabeledFunction(0, (0,), (1,))
    assert covers(root, LabeledFunction(1, (0, 0), (1,)))
    assert covers(root, LabeledFunction(2, (0, 1), (2,)))
    assert covers(LabeledFunction(1, (1,), (1,)),
                  LabeledFunction(2, (1, 0), (1,)))
    assert not covers(LabeledFunction(1, (1,), (1,)),
                      LabeledFunction(2, (0, 1), (2,)))
    assert not covers(root, root)
    assert not covers(LabeledFunction(1, (0, 0), (1,)), root)


def test_enumerate_functions_requires_admissible_parts():
    with pytest.raises(InvalidCoordinates):
        enumerate_functions(1, ChainCoordinates(2, (2,)))
    fns = enumerate_functions(1, ChainCoordinates(1, (1,)))
    assert [f.display() for f in fns] == ['(1,(1);a1)']
    assert required_values(ChainCoordinates(2, (0, 0, 0))) == (1, 2)


def test_rank_gate():
    with pytest.raises(BoundExceeded) as err:
        build_exists_pi(3)
    assert err.value.details == {'n': 3, 'cap': 2}
    forest = build_exists_pi(3, config=Config(allow_rank_3=True))
    assert len(forest.nodes) == 1015
    with pytest.raises(BoundExceeded):
        build_exists_pi(4, config=Config(allow_rank_3=True))


def test_count_report_rank_one():
    report = count_checks(1)
    assert report['exists_pi_count'] == 7
    assert report['pi_count'] == 9
    assert report['free_size'] == 72
    assert report['min_count'] == 3
    assert report['min_by_m'] == {0: 2, 1: 1}
    assert report['stirling_ok'] and report['maximality_ok']
    assert report['product_claim']['method'] == 'full closure'
    assert report['product_claim']['full']


def test_count_report_rank_two():
    report = count_checks(2)
    assert report['exists_pi_count'] == 71
    assert report['pi_count'] == 101
    assert report['free_size'] == 2014637314812019200
    assert report['min_count'] == 11
    assert report['min_by_m'] == {0: 4, 1: 5, 2: 2}
    assert report['stirling_by_m'][0] == surjection_count(2, 0) + \
        2 * surjection_count(2, 1) + surjection_count(2, 2)
    assert report['stirling_ok'] and report['maximality_ok']
    assert report['product_claim']['method'] == 'binary projections'
    assert report['product_claim']['full']


def test_rank_zero_free_algebra():
    free = free_algebra(0)
    assert free.size == 2
    assert free.generator_indices == ()
    assert free.algebra.n == 2


def test_rank_one_materialized_algebra():
    free = free_algebra(1)
    assert free.size == 72
    assert free.algebra is not None and free.algebra.n == 72
    for name in ('M1', 'M2', 'M3', 'M4', 'M5', 'prelinearity'):
        assert check_identity(free.algebra, catalog(name)) is None, name
    assert membership(free.algebra, VarietyTag('W', 1))[0]
    g = free.generator_indices[0]
    assert 0 < g < free.algebra.n


def test_rank_two_stays_lazy():
    free = free_algebra(2)
    assert free.algebra is None
    assert free.size == 2014637314812019200
    full = free.full_mask()
    for g in free.presentation.generator_masks:
        assert free.is_element(g)
        assert free.is_element(free.mask_exists(g))
        assert free.is_element(free.mask_forall(g))
        assert free.mask_imp(g, g) == full
        assert free.mask_meet(g, free.mask_exists(g)) == g


def test_separation_fixpoints_are_singletons():
    for n in (1, 2):
        pres = expand_to_pi(build_exists_pi(n))
        ids, rounds = separation_fixpoint(pres)
        assert len(set(ids)) == pres.n_points
        assert rounds <= 3


def test_segment_isomorphisms():
    for n in (1, 2):
        rows = segment_isomorphism_report(build_exists_pi(n))
        assert all(r['shapes_ok'] and r['segments_ok'] for r in rows)
        if n == 1:
            assert [r['node'] for r in rows] == \
                ['(0,(0);a0)', '(0,(0);a1)', '(1,(1);a1)']


def test_rank_one_forest_roots_are_minimal():
    forest = build_exists_pi(1)
    roots = [i for i in range(len(forest.nodes)) if forest.parent[i] < 0]
    assert len(roots) == 3
    assert set(roots) == set(forest.minimal)
