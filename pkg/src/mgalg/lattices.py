'''Finite bounded distributive lattices with Heyting implication.

Elements are integers 0..n-1; the order is kept as bitmask tables.  The
constructor validates the order, the existence of all meets and joins, bounds,
distributivity, and the residuation law for the derived implication, raising
typed errors with a concrete counterexample in the details.
'''

from . import posets
from .errors import InvalidOrder, NotDistributive


class FiniteLattice:
    '''A finite bounded distributive lattice on points 0..n-1.

    Attributes
    ----------
    n : int
        Carrier size.
    up, down : tuple[int]
        Order bitmasks, up[a] = {b : a <= b}.
    bottom, top : int
    meet, join, imp : tuple[tuple[int]]
        Full operation tables; imp is the Heyting residual of meet.
    labels : tuple[str] | None
    '''

    def __init__(self, n, up, labels=None):
        if n <= 0:
            raise InvalidOrder('carrier must be nonempty')
        up = tuple(up)
        if not posets.is_partial_order(n, up):
            raise InvalidOrder('relation is not a partial order', size=n)
        self.n = n
        self.up = up
        self.down = posets.down_masks(n, up)
        self.labels = tuple(labels) if labels is not None else None
        full = (1 << n) - 1
        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if self.down[i] == full]
        if len(bottoms) != 1 or len(tops) != 1:
            raise InvalidOrder('order is not bounded', size=n)
        self.bottom, self.top = bottoms[0], tops[0]

        by_down = {self.down[i]: i for i in range(n)}
        by_up = {up[i]: i for i in range(n)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                m = by_down.get(self.down[a] & self.down[b])
                j = by_up.get(up[a] & up[b])
                if m is None or j is None:
                    raise InvalidOrder(
                        'meet or join missing', pair=(self.label(a), self.label(b)))
                meet[a][b] = meet[b][a] = m
                join[a][b] = join[b][a] = j
        self.meet = tuple(map(tuple, meet))
        self.join = tuple(map(tuple, join))

        for a in range(n):
            ma, ja = self.meet[a], self.join[a]
            for b in range(n):
                for c in range(b, n):
                    if ma[join[b][c]] != join[ma[b]][ma[c]]:
                        raise NotDistributive(
                            'distributivity fails',
                            triple=(self.label(a), self.label(b), self.label(c)))

        imp = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                r = self.bottom
                for c in range(n):
                    if self.leq(self.meet[a][c], b):
                        r = self.join[r][c]
                imp[a][b] = r
        self.imp = tuple(map(tuple, imp))
        for a in range(n):
            for b in range(n):
                r = self.imp[a][b]
                assert self.leq(self.meet[a][r], b), 'residuation upper bound'
        # max-of-candidates joins stayed inside the candidate set, so r is the
        # largest c with a & c <= b; nothing further to scan.

    def leq(self, a, b):
        return (self.up[a] >> b) & 1 == 1

    def label(self, a):
        return self.labels[a] if self.labels is not None else f'e{a}'

    def neg(self, a):
        return self.imp[a][self.bottom]

    @property
    def is_chain(self):
        return all(
            self.leq(a, b) or self.leq(b, a)
            for a in range(self.n) for b in range(a + 1, self.n))

    def lower_covers(self, a):
        '''Maximal elements strictly below a.'''
        below = self.down[a] & ~(1 << a)
        return [b for b in posets.bits(below)
                if not (below & self.up[b] & ~(1 << b))]

    def upper_covers(self, a):
        above = self.up[a] & ~(1 << a)
        return [b for b in posets.bits(above)
                if not (above & self.down[b] & ~(1 << b))]

    def join_irreducibles(self):
        '''Elements with exactly one lower cover.'''
        return tuple(a for a in range(self.n)
                     if a != self.bottom and len(self.lower_covers(a)) == 1)

    def fold_join(self, elems):
        r = self.bottom
        for e in elems:
            r = self.join[r][e]
        return r

    def fold_meet(self, elems):
        r = self.top
        for e in elems:
            r = self.meet[r][e]
        return r


def lattice_from_pairs(size, pairs, labels=None):
    '''Build a lattice from a list of (lower, upper) index pairs.

    Reflexive pairs are implied and the transitive closure is taken, so a
    chain may be given by adjacent pairs only.
    '''
    if size <= 0:
        raise InvalidOrder('size must be positive', size=size)
    up = [1 << i for i in range(size)]
    for a, b in pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise InvalidOrder('pair out of range', pair=(a, b), size=size)
        up[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(size):
            acc = up[i]
            for j in posets.bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    return FiniteLattice(size, tuple(up), labels=labels)


def lattice_of_upsets(n, up, point_names=None):
    '''The lattice of up-closed subsets of a poset, ordered by inclusion.

    Returns (lattice, masks) with masks[i] the point set of element i; elements
    are sorted by (size, mask) so bottom is the empty set and top the full one.
    '''
    masks = sorted(posets.iter_upsets(n, up),
                   key=lambda m: (bin(m).count('1'), m))
    index = {m: i for i, m in enumerate(masks)}
    size = len(masks)
    lat_up = []
    for m in masks:
        mask = 0
        for other, j in index.items():
            if m & ~other == 0:
                mask |= 1 << j
        lat_up.append(mask)

    def name(m):
        pts = [point_names[i] if point_names else str(i) for i in posets.bits(m)]
        return '{' + ','.join(pts) + '}'

    lat = FiniteLattice(size, tuple(lat_up), labels=[name(m) for m in masks])
    return lat, masks


assert lattice_from_pairs(2, [(0, 1)]).is_chain
assert lattice_from_pairs(3, [(0, 1), (1, 2)]).imp[2][1] == 1
