import pytest

from mgalg.chains import ChainCoordinates, build_chain
from mgalg.core import (HomWitness, find_isomorphism, godel_quotient_by_filter,
                        subalgebra_on)
from mgalg.duality import (MGSpace, algebra_from_space, brute_force_congruence_count,
                           congruence_lattice, coordinates_of, dual_space,
                           dualize_hom, enumerate_interior_operators,
                           interior, interior_conditions, saturation,
                           sigma_masks, space_isomorphism, validate_mg_space)
from mgalg.errors import InvalidInput, InvalidSpace, NotExistsPrime
from mgalg.lattices import lattice_of_upsets
from mgalg.posets import bits


def _space(n, pairs, classes):
    up = [1 << i for i in range(n)]
    changed = True
    rel = set(pairs)
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    for a, b in rel:
        up[a] |= 1 << b
    return MGSpace(n, tuple(up), tuple(tuple(c) for c in classes))


def test_round_trip_on_corpus(corpus6):
    for a in corpus6:
        s = dual_space(a)
        back = algebra_from_space(s)
        iso = find_isomorphism(a, back)
        assert iso is not None, a.n


def test_space_round_trip():
    s = _space(3, [(0, 1)], [(0, 1), (2,)])
    a = algebra_from_space(s)
    again = dual_space(a)
    assert space_isomorphism(s, again) is not None
    discrete = _space(3, [(0, 1)], [(0,), (1,), (2,)])
    assert space_isomorphism(s, discrete) is None


def test_saturation_and_interior_are_dual_bounds():
    s = _space(4, [(0, 2), (1, 3)], [(0, 1), (2,), (3,)])
    for mask in range(16):
        sat = saturation(s, mask)
        inn = interior(s, mask)
        assert inn & ~mask == 0
        assert mask & ~sat == 0
        assert saturation(s, sat) == sat
        assert interior(s, inn) == inn


def test_validation_flags_broken_space():
    bad_sat = _space(3, [(0, 1)], [(0, 2), (1,)])
    report = validate_mg_space(bad_sat)
    assert not report.ok
    assert any('saturation' in v for v in report.violations)
    with pytest.raises(InvalidSpace):
        algebra_from_space(bad_sat)
    bad_int = _space(3, [(0, 1)], [(1, 2), (0,)])
    report = validate_mg_space(bad_int)
    assert not report.ok
    assert any('interior' in v for v in report.violations)
    vee = _space(3, [(0, 1), (0, 2)], [(0,), (1,), (2,)])
    report = validate_mg_space(vee)
    assert not report.ok
    assert any('chain' in v for v in report.violations)
    good = _space(2, [(0, 1)], [(0,), (1,)])
    assert validate_mg_space(good).ok


def test_congruence_counts_match_brute_force():
    for coords in [(2, (0, 1)), (2, (1, 0)), (3, (0, 1, 0))]:
        a = build_chain(ChainCoordinates(*coords))
        cons = congruence_lattice(a)
        assert len(cons) == brute_force_congruence_count(a)
        assert len(cons) == len(a.exists_image)
        image_part, _ = subalgebra_on(a, a.exists_image)
        assert len(cons) == brute_force_congruence_count(
            image_part, include_quantifiers=False)
        sizes = sorted(c.block_count for c in cons)
        assert sizes[0] == 1 and sizes[-1] == a.n


def test_congruence_lattice_matches_quantifier_free_reduct():
    a = build_chain(ChainCoordinates(2, (0, 1)))
    monadic = brute_force_congruence_count(a)
    reduct = brute_force_congruence_count(a, include_quantifiers=False)
    assert monadic == 3
    assert reduct == 4


def test_coordinates_of_round_trip():
    for coords in [ChainCoordinates(2, (0, 1)), ChainCoordinates(3, (1, 1)),
                   ChainCoordinates(4, (0, 1, 1))]:
        a = build_chain(coords)
        got = coordinates_of(a, a.top)
        assert got == coords
    c = build_chain(ChainCoordinates(2, (0, 1)))
    with pytest.raises(NotExistsPrime):
        coordinates_of(c, 2)


def test_dualize_hom_and_guard():
    a = build_chain(ChainCoordinates(2, (0, 1)))
    b = build_chain(ChainCoordinates(0, (0,)))
    mapping = tuple(0 if x == 0 else 1 for x in range(a.n))
    w = HomWitness(a, b, mapping)
    phi = dualize_hom(w)
    assert phi.source.n == b.lat.join_irreducibles().__len__()
    assert all(0 <= v < dual_space(a).n for v in phi.point_map)
    _, witness = godel_quotient_by_filter(a, [x for x in range(a.n) if a.leq(2, x)])
    with pytest.raises(InvalidInput):
        dualize_hom(witness)


def _naive_interior_count(lat):
    from itertools import product
    count = 0
    for table in product(range(lat.n), repeat=lat.n):
        if table[lat.top] != lat.top:
            continue
        if any(not lat.leq(table[x], x) or table[table[x]] != table[x]
               for x in range(lat.n)):
            continue
        if any(table[lat.meet[x][y]] != lat.meet[table[x]][table[y]]
               for x in range(lat.n) for y in range(lat.n)):
            continue
        count += 1
    return count


def test_interior_operator_census():
    four_chain, _ = lattice_of_upsets(3, (0b111, 0b110, 0b100))
    assert four_chain.n == 4
    ops = enumerate_interior_operators(four_chain)
    assert len(ops) == 4
    assert len(ops) == _naive_interior_count(four_chain)
    diamond, _ = lattice_of_upsets(3, (0b111, 0b010, 0b100))
    ops = enumerate_interior_operators(diamond)
    assert len(ops) == _naive_interior_count(diamond)
    for t in ops:
        conds = interior_conditions(diamond, t)
        assert len(set(conds)) == 1


def test_sigma_masks_encode_order():
    a = build_chain(ChainCoordinates(2, (1, 0)))
    sigma = sigma_masks(a)
    assert sigma[a.bottom] == 0
    for x in range(a.n):
        for y in range(a.n):
            if a.leq(x, y):
                assert sigma[x] & ~sigma[y] == 0
    covered = 0
    for m in sigma:
        covered |= m
    assert list(bits(covered)) == list(range(dual_space(a).n))
