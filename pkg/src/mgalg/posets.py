'''Bitmask-encoded finite posets.

A poset on points 0..n-1 is a tuple ``up`` with ``up[i]`` the bitmask of
``{j : i <= j}`` (always including ``i`` itself).  These helpers provide
validation, up-set iteration, canonical forms, isomorphism search, and
enumeration of all posets up to isomorphism by repeatedly attaching a new
maximal point.
'''

from itertools import permutations, product


def bits(mask):
    '''Yield the set bit positions of mask in increasing order.'''
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_partial_order(n, up):
    '''Check reflexivity, antisymmetry and transitivity of an up-mask table.'''
    for i in range(n):
        if not (up[i] >> i) & 1:
            return False
        for j in bits(up[i]):
            if i != j and (up[j] >> i) & 1:
                return False
            if up[j] & ~up[i]:
                return False
    return True


def down_masks(n, up):
    '''Down-set masks: down[i] = {j : j <= i}.'''
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    return tuple(down)


def iter_upsets(n, up):
    '''Yield every upward-closed subset as a bitmask.'''
    # Decide maximal points first so each point's strict up-set is settled.
    order = sorted(range(n), key=lambda i: (bin(up[i]).count('1'), i))

    def rec(k, mask):
        if k == n:
            yield mask
            return
        i = order[k]
        yield from rec(k + 1, mask)
        if not (up[i] & ~mask & ~(1 << i)):
            yield from rec(k + 1, mask | (1 << i))

    yield from rec(0, 0)


def count_upsets(n, up, cap=None):
    '''Number of up-sets; stops early and returns cap+1 when a cap is given.'''
    count = 0
    for _ in iter_upsets(n, up):
        count += 1
        if cap is not None and count > cap:
            return count
    return count


def count_downsets(n, up, cap=None):
    '''Number of down-sets (equal to the number of up-sets by complementation).'''
    return count_upsets(n, up, cap)


def refine_partition(n, up, extra=None):
    '''Split points into invariant classes by iterated neighbourhood signatures.

    Returns (classes, signatures): classes[i] is a dense id, ids ordered by the
    canonical sort of the final signatures, so isomorphic posets with matching
    extra invariants produce identical signature sequences.
    '''
    down = down_masks(n, up)
    sig = [((extra[i] if extra is not None else 0),
            bin(up[i]).count('1'), bin(down[i]).count('1')) for i in range(n)]
    while True:
        ids = {s: k for k, s in enumerate(sorted(set(sig)))}
        cls = [ids[sig[i]] for i in range(n)]
        new = []
        for i in range(n):
            ups = tuple(sorted(cls[j] for j in bits(up[i]) if j != i))
            downs = tuple(sorted(cls[j] for j in bits(down[i]) if j != i))
            new.append((cls[i], ups, downs))
        if len(set(new)) == len(set(sig)):
            order = {s: k for k, s in enumerate(sorted(set(sig)))}
            final = tuple(order[sig[i]] for i in range(n))
            # repr-normalize so signatures from different refinement depths
            # stay mutually comparable as sort keys
            return final, tuple(sorted(map(repr, sig)))
        sig = new


def _class_orderings(n, classes):
    '''All point orderings that keep class ids non-decreasing.'''
    groups = {}
    for i, c in enumerate(classes):
        groups.setdefault(c, []).append(i)
    blocks = [groups[c] for c in sorted(groups)]
    for perms in product(*(permutations(b) for b in blocks)):
        yield [i for blk in perms for i in blk]


def canonical_key(n, up, extra=None):
    '''Isomorphism-invariant key: class signatures plus the minimal relation matrix.'''
    classes, sigs = refine_partition(n, up, extra)
    best = None
    for perm in _class_orderings(n, classes):
        key = bytes(
            (up[perm[i]] >> perm[j]) & 1 for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return sigs, best


def poset_isomorphisms(nA, upA, nB, upB, extraA=None, extraB=None, pair_rels=()):
    '''Yield order isomorphisms A -> B as index tuples.

    extra*: per-point invariants each map must preserve exactly.
    pair_rels: (relA, relB) mask-table pairs of binary relations to preserve.
    '''
    if nA != nB:
        return
    clsA, sigA = refine_partition(nA, upA, extraA)
    clsB, sigB = refine_partition(nB, upB, extraB)
    if sigA != sigB:
        return
    order = sorted(range(nA), key=lambda i: (clsA[i], i))
    image = [-1] * nA
    used = [False] * nB

    def rec(k):
        if k == nA:
            yield tuple(image)
            return
        a = order[k]
        for b in range(nB):
            if used[b] or clsB[b] != clsA[a]:
                continue
            ok = True
            for a2 in order[:k]:
                b2 = image[a2]
                if ((upA[a] >> a2) & 1) != ((upB[b] >> b2) & 1):
                    ok = False
                    break
                if ((upA[a2] >> a) & 1) != ((upB[b2] >> b) & 1):
                    ok = False
                    break
                for relA, relB in pair_rels:
                    if ((relA[a] >> a2) & 1) != ((relB[b] >> b2) & 1):
                        ok = False
                        break
                    if ((relA[a2] >> a) & 1) != ((relB[b2] >> b) & 1):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                image[a] = b
                used[b] = True
                yield from rec(k + 1)
                image[a] = -1
                used[b] = False

    yield from rec(0)


def enumerate_posets(max_points, max_downsets=None):
    '''Yield one representative (n, up) per isomorphism class, sizes 1..max_points.

    Every poset arises from a smaller one by attaching a fresh maximal point
    above a down-closed subset.  With max_downsets set, posets whose down-set
    lattice exceeds that size are pruned (the count only grows with points).
    '''
    level = [(1, (1,))]
    seen = {canonical_key(1, (1,))}
    yield 1, (1,)
    for size in range(2, max_points + 1):
        nxt = []
        for n, up in level:
            down = down_masks(n, up)
            # Down-closed subsets are up-sets of the dual order.
            for dset in iter_upsets(n, down):
                new_up = tuple(
                    up[i] | (1 << n) if (dset >> i) & 1 else up[i]
                    for i in range(n)) + (1 << n,)
                if max_downsets is not None and count_downsets(
                        n + 1, new_up, cap=max_downsets) > max_downsets:
                    continue
                key = canonical_key(n + 1, new_up)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((n + 1, new_up))
        nxt.sort(key=lambda t: canonical_key(*t))
        yield from nxt
        level = nxt


assert is_partial_order(3, (0b111, 0b010, 0b110))
assert not is_partial_order(2, (0b11, 0b11))
assert sum(1 for _ in enumerate_posets(3)) == 1 + 2 + 5
