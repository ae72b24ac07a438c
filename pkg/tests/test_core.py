import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgalg.chains import ChainCoordinates, build_chain
from mgalg.core import (HomWitness, build_algebra, classify, enumerate_algebras,
                        exists_reduct, find_isomorphism, generate_subalgebra,
                        ordinal_sum, product_algebra, quotient_by_filter,
                        subalgebra_on, validate_monadic_filter)
from mgalg.duality import brute_force_congruence_count
from mgalg.errors import (BoundExceeded, InvalidInput, NotMonadicFilter,
                          NotMRelativelyComplete, NotPrelinear, NotSubuniverse)


def chain_order(n):
    return (n, [(i, i + 1) for i in range(n - 1)])


def test_four_chain_with_gap_image():
    a = build_algebra(chain_order(4), [0, 2, 3])
    assert a.fa[1] == 0 and a.ex[1] == 2
    assert a.image_is_chain()


def test_two_chain_identity_quantifiers():
    a = build_algebra(chain_order(2), [0, 1])
    assert a.ex == (0, 1) and a.fa == (0, 1)


def test_prelinearity_rejected_on_non_forest_dual():
    # down-sets of two minimal points under a common top
    pairs = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]
    with pytest.raises(NotPrelinear):
        build_algebra((5, pairs), [0, 4])


def test_image_must_be_subuniverse():
    square = (4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    with pytest.raises(NotSubuniverse):
        build_algebra(square, [0, 1, 3])
    with pytest.raises(NotSubuniverse):
        build_algebra(chain_order(3), [1, 2])
    with pytest.raises(InvalidInput):
        build_algebra(chain_order(4), [0, 1, 3, 9])


def test_relative_completeness_failure_triple():
    # 3-chain x 2-chain, elements (i, j) at index 2 * i + j
    pairs = []
    for i1 in range(3):
        for j1 in range(2):
            for i2 in range(3):
                for j2 in range(2):
                    if i1 <= i2 and j1 <= j2:
                        pairs.append((2 * i1 + j1, 2 * i2 + j2))
    image = [0, 3, 5]   # (0,0), (1,1), (2,1)
    with pytest.raises(NotMRelativelyComplete) as err:
        build_algebra((6, pairs), image)
    assert err.value.details == {'c1': 'e5', 'c2': 'e3', 'a': 'e4'}


def test_enumeration_golden_counts():
    assert len(enumerate_algebras(2)) == 1
    assert len(enumerate_algebras(3)) == 3
    assert len(enumerate_algebras(4)) == 9
    assert len(enumerate_algebras(5)) == 20
    with pytest.raises(BoundExceeded):
        enumerate_algebras(9)
    with pytest.raises(InvalidInput):
        enumerate_algebras(1)


def test_enumeration_is_deterministic():
    first = [a.n for a in enumerate_algebras(4)]
    second = [a.n for a in enumerate_algebras(4)]
    assert first == second == sorted(first)


def test_classify_examples():
    c210 = build_chain(ChainCoordinates(2, (1, 0)))
    cls = classify(c210)
    assert (cls.fsi, cls.si, cls.simple) == (True, True, False)
    two = build_algebra(chain_order(2), [0, 1])
    square = product_algebra([two, two])
    assert not classify(square).fsi
    for m in range(3):
        assert classify(build_chain(ChainCoordinates(m, (m,)))).simple


def test_generate_subalgebra_examples():
    c201 = build_chain(ChainCoordinates(2, (0, 1)))
    assert generate_subalgebra(c201, [2]) == tuple(range(c201.n))
    assert generate_subalgebra(c201, []) == (c201.bottom, c201.top)
    c210 = build_chain(ChainCoordinates(2, (1, 0)))
    assert generate_subalgebra(c210, [1]) == tuple(range(c210.n))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_generate_subalgebra_monotone_idempotent(data):
    algebras = enumerate_algebras(5)
    a = data.draw(st.sampled_from(algebras))
    seeds = data.draw(st.lists(st.integers(0, a.n - 1), max_size=3))
    more = seeds + data.draw(st.lists(st.integers(0, a.n - 1), max_size=2))
    closed = generate_subalgebra(a, seeds)
    assert set(closed) <= set(generate_subalgebra(a, more))
    assert generate_subalgebra(a, closed) == closed


def test_product_and_projection_quantifiers():
    two = build_algebra(chain_order(2), [0, 1])
    four = product_algebra([two, two])
    assert four.n == 4
    assert four.ex == tuple(range(4)) and four.fa == tuple(range(4))
    with pytest.raises(BoundExceeded):
        product_algebra([four] * 8)


def test_quotient_by_principal_filter():
    c201 = build_chain(ChainCoordinates(2, (0, 1)))
    members = [a for a in range(c201.n) if c201.leq(1, a)]
    q, witness = quotient_by_filter(c201, members)
    assert q.n == 2 and witness.surjective
    bad = [c201.top, 2]
    with pytest.raises(NotMonadicFilter):
        quotient_by_filter(c201, bad)


def test_monadic_filter_count_matches_reduct_congruences(corpus6):
    for a in corpus6:
        if a.n > 5:
            continue
        filters = 0
        for mask in range(1, 1 << a.n):
            members = [x for x in range(a.n) if (mask >> x) & 1]
            try:
                validate_monadic_filter(a, members)
                filters += 1
            except NotMonadicFilter:
                pass
        reduct = brute_force_congruence_count(exists_reduct(a),
                                              include_quantifiers=False)
        assert filters == len(a.exists_image) == reduct


def test_subalgebra_on_closure():
    c210 = build_chain(ChainCoordinates(2, (1, 0)))
    sub, embed = subalgebra_on(c210, [0, 2, 3])
    assert sub.n == 3 and embed.injective


def test_ordinal_sum_sizes():
    two = build_algebra(chain_order(2), [0, 1])
    three = build_algebra(chain_order(3), [0, 2])
    glued = ordinal_sum(two, three, [0, 1, 3])
    assert glued.n == 4
    assert glued.ex[2] == 3


def test_find_isomorphism_distinguishes_images():
    c11 = build_chain(ChainCoordinates(1, (1,)))
    c100 = build_chain(ChainCoordinates(1, (0, 0)))
    assert find_isomorphism(c11, c11) is not None
    assert find_isomorphism(c11, c100) is None


def test_hom_witness_rejects_non_homomorphism():
    two = build_algebra(chain_order(2), [0, 1])
    three = build_algebra(chain_order(3), [0, 2])
    with pytest.raises(AssertionError):
        HomWitness(two, three, (1, 0))
