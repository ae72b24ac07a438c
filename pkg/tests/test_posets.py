import pytest

from mgalg import posets


def up_from_pairs(n, pairs):
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        up[a] |= 1 << b
    for k in range(n):
        for i in range(n):
            if (up[i] >> k) & 1:
                up[i] |= up[k]
    return tuple(up)


def test_partial_order_detection():
    assert posets.is_partial_order(3, up_from_pairs(3, [(0, 1), (1, 2)]))
    broken = (0b011, 0b011, 0b100)
    assert not posets.is_partial_order(3, broken)


def test_upset_count_matches_enumeration():
    n = 4
    up = up_from_pairs(n, [(0, 1), (0, 2), (1, 3), (2, 3)])
    listed = list(posets.iter_upsets(n, up))
    assert len(set(listed)) == len(listed)
    assert posets.count_upsets(n, up) == len(listed)
    for mask in listed:
        for x in posets.bits(mask):
            assert up[x] & ~mask == 0


def test_count_upsets_cap():
    up = up_from_pairs(4, [])
    assert posets.count_upsets(4, up) == 16
    assert posets.count_upsets(4, up, cap=5) > 5


def test_enumerate_posets_small_counts():
    by_size = {}
    for n, up in posets.enumerate_posets(3):
        by_size[n] = by_size.get(n, 0) + 1
    assert by_size == {1: 1, 2: 2, 3: 5}


def test_canonical_key_is_relabeling_invariant():
    n = 4
    up = up_from_pairs(n, [(0, 1), (0, 2), (2, 3)])
    perm = (2, 0, 3, 1)
    relabeled = [0] * n
    for a in range(n):
        for b in posets.bits(up[a]):
            relabeled[perm[a]] |= 1 << perm[b]
    assert posets.canonical_key(n, up) == posets.canonical_key(n, tuple(relabeled))
    other = up_from_pairs(n, [(0, 1), (1, 2), (2, 3)])
    assert posets.canonical_key(n, up) != posets.canonical_key(n, other)


def test_poset_isomorphisms_respect_extras():
    up = up_from_pairs(2, [])
    isos = list(posets.poset_isomorphisms(2, up, 2, up))
    assert sorted(isos) == [(0, 1), (1, 0)]
    only = list(posets.poset_isomorphisms(2, up, 2, up,
                                          extraA=('x', 'y'), extraB=('x', 'y')))
    assert only == [(0, 1)]


def test_refine_partition_separates_by_degree():
    up = up_from_pairs(3, [(0, 1), (0, 2)])
    ids, _ = posets.refine_partition(3, up)
    groups = {}
    for point, cid in enumerate(ids):
        groups.setdefault(cid, []).append(point)
    assert sorted(groups.values()) == [[0], [1, 2]]
