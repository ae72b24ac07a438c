'''Finite Priestley-type duality with an equivalence relation.

Points of the dual space are the filters generated by join-irreducible
elements, ordered by inclusion and partitioned by agreement on the quantifier
image.  Increasing point sets recover the algebra: saturation by classes is
the existential quantifier, the union of enclosed classes the universal one.

The inclusion order on generated filters is the reverse of the algebra order
on their generators; ``space_order_from_generators`` is the only function
where that reversal happens, and everything else goes through it.
'''

from dataclasses import dataclass, field

from . import posets
from .chains import ChainCoordinates
from .config import DEFAULT_CONFIG
from .core import FiniteMGAlgebra, HomWitness, build_algebra
from .errors import (InvalidInput, InvalidSpace, NotExistsPrime,
                     NotInteriorOperator, TooLarge)
from .lattices import lattice_of_upsets


@dataclass(frozen=True)
class MGSpace:
    '''A finite ordered set with an equivalence relation on its points.'''

    n: int
    up: tuple              # up[i] = bitmask of {j : i <= j} in the space order
    classes: tuple         # partition of 0..n-1 into sorted tuples
    labels: tuple = None

    def class_index(self):
        out = [-1] * self.n
        for k, cls in enumerate(self.classes):
            for i in cls:
                out[i] = k
        return out

    def class_masks(self):
        masks = []
        for cls in self.classes:
            m = 0
            for i in cls:
                m |= 1 << i
            masks.append(m)
        return masks

    def label(self, i):
        return self.labels[i] if self.labels else f'x{i}'


def space_order_from_generators(primes, leq):
    '''Order masks for the filters [p), p prime, under inclusion.

    [p) is contained in [q) exactly when q lies below p in the algebra, so the
    space order is the reverse of the algebra order on the generators.
    '''
    k = len(primes)
    up = []
    for i in range(k):
        mask = 0
        for j in range(k):
            if leq(primes[j], primes[i]):
                mask |= 1 << j
        up.append(mask)
    return tuple(up)


def dual_space(algebra):
    '''The dual space of an algebra: generated prime filters with agreement classes.'''
    primes = algebra.lat.join_irreducibles()
    up = space_order_from_generators(primes, algebra.leq)
    groups = {}
    for i, p in enumerate(primes):
        groups.setdefault(algebra.ex[p], []).append(i)
    classes = tuple(sorted(tuple(v) for v in groups.values()))
    labels = tuple(algebra.label(p) for p in primes)
    return MGSpace(len(primes), up, classes, labels)


def saturation(space, mask):
    '''Union of the classes meeting the given point set.'''
    out = 0
    for cm in space.class_masks():
        if cm & mask:
            out |= cm
    return out


def interior(space, mask):
    '''Union of the classes contained in the given point set.'''
    out = 0
    for cm in space.class_masks():
        if cm & ~mask == 0:
            out |= cm
    return out


def _is_increasing(space, mask):
    for i in posets.bits(mask):
        if space.up[i] & ~mask:
            return False
    return True


@dataclass
class SpaceReport:
    ok: bool
    violations: list = field(default_factory=list)
    partial: bool = False
    checked_sets: int = 0


def validate_mg_space(space, config=None, allow_partial=False):
    '''Check the space axioms, exhaustively up to the configured size.

    Beyond the bound, principal up-sets and their pairwise unions stand in for
    the full scan and the report is flagged partial; without allow_partial the
    oversized case raises TooLarge.
    '''
    cfg = config or DEFAULT_CONFIG
    report = SpaceReport(ok=True)

    seen = set()
    for cls in space.classes:
        for i in cls:
            if i in seen or not (0 <= i < space.n):
                report.violations.append('classes do not partition the points')
                report.ok = False
                return report
            seen.add(i)
    if len(seen) != space.n:
        report.violations.append('classes do not partition the points')
        report.ok = False
        return report

    if not posets.is_partial_order(space.n, space.up):
        report.violations.append('point order is not a partial order')
        report.ok = False
        return report

    for i in range(space.n):
        ups = list(posets.bits(space.up[i]))
        chain_ok = all(
            ((space.up[a] >> b) & 1) or ((space.up[b] >> a) & 1)
            for a in ups for b in ups)
        if not chain_ok:
            report.violations.append(
                f'up-set of point {space.label(i)} is not a chain')
            report.ok = False

    if space.n > cfg.space_scan_bound:
        if not allow_partial:
            raise TooLarge('space too large for exhaustive validation',
                           size=space.n, bound=cfg.space_scan_bound)
        report.partial = True
        candidates = set()
        for i in range(space.n):
            candidates.add(space.up[i])
            for j in range(space.n):
                candidates.add(space.up[i] | space.up[j])
        sets = sorted(candidates)
    else:
        sets = list(posets.iter_upsets(space.n, space.up))

    for mask in sets:
        report.checked_sets += 1
        if not _is_increasing(space, saturation(space, mask)):
            report.violations.append(
                f'saturation of an increasing set is not increasing (set mask {mask})')
            report.ok = False
        if not _is_increasing(space, interior(space, mask)):
            report.violations.append(
                f'class interior of an increasing set is not increasing (set mask {mask})')
            report.ok = False
    return report


def algebra_from_space(space, config=None):
    '''The algebra of increasing sets of a valid space.'''
    report = validate_mg_space(space, config=config)
    if not report.ok:
        raise InvalidSpace('space axioms fail', violations=report.violations)
    names = [space.label(i) for i in range(space.n)]
    lat, masks = lattice_of_upsets(space.n, space.up, point_names=names)
    image = [i for i, m in enumerate(masks) if saturation(space, m) == m]
    algebra = build_algebra(lat, image)
    index = {m: i for i, m in enumerate(masks)}
    for i, m in enumerate(masks):
        assert algebra.ex[i] == index[saturation(space, m)]
        assert algebra.fa[i] == index[interior(space, m)]
    algebra.element_masks = tuple(masks)
    algebra.space = space
    return algebra


def sigma_masks(algebra):
    '''sigma[a] = the dual-space points whose filter contains a.'''
    primes = algebra.lat.join_irreducibles()
    out = []
    for a in range(algebra.n):
        m = 0
        for i, p in enumerate(primes):
            if algebra.leq(p, a):
                m |= 1 << i
        out.append(m)
    return tuple(out)


def space_isomorphism(s1, s2):
    '''An order isomorphism preserving classes, or None.'''
    if s1.n != s2.n or sorted(map(len, s1.classes)) != sorted(map(len, s2.classes)):
        return None
    idx1, idx2 = s1.class_index(), s2.class_index()
    rel1 = [0] * s1.n
    rel2 = [0] * s2.n
    for i in range(s1.n):
        for j in range(s1.n):
            if idx1[i] == idx1[j]:
                rel1[i] |= 1 << j
            if idx2[i] == idx2[j]:
                rel2[i] |= 1 << j
    x1 = tuple(bin(rel1[i]).count('1') for i in range(s1.n))
    x2 = tuple(bin(rel2[i]).count('1') for i in range(s2.n))
    for phi in posets.poset_isomorphisms(
            s1.n, s1.up, s2.n, s2.up, x1, x2, pair_rels=[(tuple(rel1), tuple(rel2))]):
        return phi
    return None


@dataclass
class SpaceMorphism:
    '''A point map between spaces satisfying the dual morphism conditions.'''

    source: MGSpace
    target: MGSpace
    point_map: tuple


def dualize_hom(witness):
    '''The dual of an algebra homomorphism h: A -> B.

    Maps a point of the dual of B (the filter generated by a prime q) to the
    point of the dual of A generated by the meet of the h-preimage of that
    filter; all morphism conditions are then verified exhaustively.
    '''
    if witness.godel_only:
        raise InvalidInput('dualization needs a quantifier-preserving witness')
    A, B, h = witness.source, witness.target, witness.mapping
    primesA = A.lat.join_irreducibles()
    primesB = B.lat.join_irreducibles()
    spaceA, spaceB = dual_space(A), dual_space(B)
    posA = {p: i for i, p in enumerate(primesA)}
    point_map = []
    for q in primesB:
        preimage = [a for a in range(A.n) if B.leq(q, h[a])]
        p = A.lat.fold_meet(preimage)
        assert p in posA, 'preimage filter is not generated by a prime'
        assert all(A.leq(p, a) == (B.leq(q, h[a])) for a in range(A.n)), \
            'preimage filter mismatch'
        point_map.append(posA[p])
    f = tuple(point_map)

    for x in range(spaceB.n):
        for y in range(spaceB.n):
            if (spaceB.up[x] >> y) & 1:
                assert (spaceA.up[f[x]] >> f[y]) & 1, 'dual map not order preserving'
    for x in range(spaceB.n):
        image_of_upset = {f[y] for y in posets.bits(spaceB.up[x])}
        assert image_of_upset == set(posets.bits(spaceA.up[f[x]])), \
            'dual map does not send principal up-sets onto principal up-sets'

    def preimage_mask(maskA):
        m = 0
        for x in range(spaceB.n):
            if (maskA >> f[x]) & 1:
                m |= 1 << x
        return m

    for maskA in posets.iter_upsets(spaceA.n, spaceA.up):
        pre = preimage_mask(maskA)
        assert preimage_mask(saturation(spaceA, maskA)) == saturation(spaceB, pre), \
            'dual map does not commute with saturation'
        assert preimage_mask(interior(spaceA, maskA)) == interior(spaceB, pre), \
            'dual map does not commute with class interior'

    return SpaceMorphism(spaceB, spaceA, f)


# -- congruences -------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    '''A congruence presented by its dual saturated increasing point set.'''

    y_points: tuple
    partition: tuple

    @property
    def block_count(self):
        return len(self.partition)


def congruence_lattice(algebra):
    '''All congruences, one per saturated increasing subset of the dual space.

    The correspondence is an anti-isomorphism: larger point sets give finer
    congruences; the full space yields the identity congruence and the empty
    set the total one.
    '''
    space = dual_space(algebra)
    sigma = sigma_masks(algebra)
    out = []
    for mask in sorted(posets.iter_upsets(space.n, space.up),
                       key=lambda m: (bin(m).count('1'), m)):
        if saturation(space, mask) != mask:
            continue
        blocks = {}
        for a in range(algebra.n):
            blocks.setdefault(sigma[a] & mask, []).append(a)
        partition = tuple(sorted(tuple(b) for b in blocks.values()))
        out.append(Congruence(tuple(posets.bits(mask)), partition))
    return out


def partition_meet(p1, p2):
    '''Common refinement of two partitions given as tuples of blocks.'''
    blocks = {}
    idx2 = {}
    for k, b in enumerate(p2):
        for a in b:
            idx2[a] = k
    for k, b in enumerate(p1):
        for a in b:
            blocks.setdefault((k, idx2[a]), []).append(a)
    return tuple(sorted(tuple(b) for b in blocks.values()))


def brute_force_congruence_count(algebra, include_quantifiers=True):
    '''Count congruences by scanning all partitions of the carrier.

    Exponential; meant as an independent oracle on small algebras.
    '''
    n = algebra.n

    def compatible(assign):
        for a in range(n):
            for b in range(a + 1, n):
                if assign[a] != assign[b]:
                    continue
                if include_quantifiers:
                    if assign[algebra.ex[a]] != assign[algebra.ex[b]]:
                        return False
                    if assign[algebra.fa[a]] != assign[algebra.fa[b]]:
                        return False
                for c in range(n):
                    if assign[algebra.meet(a, c)] != assign[algebra.meet(b, c)]:
                        return False
                    if assign[algebra.join(a, c)] != assign[algebra.join(b, c)]:
                        return False
                    if assign[algebra.imp(a, c)] != assign[algebra.imp(b, c)]:
                        return False
                    if assign[algebra.imp(c, a)] != assign[algebra.imp(c, b)]:
                        return False
        return True

    count = 0

    def grow(assign, used):
        nonlocal count
        if len(assign) == n:
            if compatible(assign):
                count += 1
            return
        for v in range(used + 1):
            grow(assign + [v], max(used, v + 1))

    grow([], 0)
    return count


# -- prime coordinates -------------------------------------------------------

def coordinates_of(algebra, p):
    '''Coordinates of the chain of primes below an image prime.

    p must be join irreducible and fixed by the existential quantifier;
    the parts count the non-image primes between consecutive image primes
    in the principal chain (p].
    '''
    primes = set(algebra.lat.join_irreducibles())
    if p not in primes:
        raise NotExistsPrime('element is not join irreducible',
                             element=algebra.label(p))
    if algebra.ex[p] != p:
        raise NotExistsPrime('prime is not fixed by the existential quantifier',
                             element=algebra.label(p))
    below = sorted((q for q in primes if algebra.leq(q, p)),
                   key=lambda q: bin(algebra.lat.down[q]).count('1'))
    for a, b in zip(below, below[1:]):
        assert algebra.leq(a, b), 'principal prime chain is not a chain'
    m = len(below) - 1
    image_positions = [i for i, q in enumerate(below, start=1)
                       if (algebra.image_mask >> q) & 1]
    assert image_positions and image_positions[-1] == m + 1
    parts = []
    prev = 0
    for pos in image_positions:
        parts.append(pos - prev - 1)
        prev = pos
    return ChainCoordinates(m, tuple(parts))


# -- interior operators on plain lattices ------------------------------------

def enumerate_interior_operators(lat):
    '''All interior operators on a finite bounded distributive lattice.'''
    out = []

    def extend(table):
        a = len(table)
        if a == lat.n:
            t = tuple(table)
            if t[lat.top] != lat.top:
                return
            for x in range(lat.n):
                if t[t[x]] != t[x]:
                    return
                for y in range(x, lat.n):
                    if t[lat.meet[x][y]] != lat.meet[t[x]][t[y]]:
                        return
            out.append(t)
            return
        for v in posets.bits(lat.down[a]):
            extend(table + [v])

    extend([])
    return out


def interior_conditions(lat, fa_table):
    '''The four equivalent shapes of the extra duality axiom, each as a boolean.

    Points are the filters of join-irreducible generators; two filters are
    equivalent when they contain the same image elements.  Returns the tuple
    (exists_equivalent_below, class_inside_sigma, interior_commutes,
    join_distribution); the four entries always agree.
    '''
    fa = tuple(fa_table)
    if len(fa) != lat.n or fa[lat.top] != lat.top:
        raise NotInteriorOperator('table is not an interior operator')
    for x in range(lat.n):
        if not lat.leq(fa[x], x) or fa[fa[x]] != fa[x]:
            raise NotInteriorOperator('table is not an interior operator')
        for y in range(lat.n):
            if fa[lat.meet[x][y]] != lat.meet[fa[x]][fa[y]]:
                raise NotInteriorOperator('table is not an interior operator')

    primes = lat.join_irreducibles()
    k = len(primes)
    image = sorted(set(fa))
    traces = [tuple(c for c in image if lat.leq(p, c)) for p in primes]

    cond1 = True
    for i in range(k):
        for j in range(k):
            if set(traces[i]) <= set(traces[j]):
                if not any(traces[r] == traces[i] and lat.leq(primes[j], primes[r])
                           for r in range(k)):
                    cond1 = False

    cond2 = True
    for i, p in enumerate(primes):
        cls = [q for r, q in enumerate(primes) if traces[r] == traces[i]]
        for a in range(lat.n):
            if lat.leq(p, a) and all(lat.leq(q, a) for q in cls):
                if not lat.leq(p, fa[a]):
                    cond2 = False

    cond3 = True
    for a in range(lat.n):
        sigma_a = {i for i in range(k) if lat.leq(primes[i], a)}
        inner = set()
        for i in range(k):
            cls = {r for r in range(k) if traces[r] == traces[i]}
            if cls <= sigma_a:
                inner |= cls
        sigma_fa = {i for i in range(k) if lat.leq(primes[i], fa[a])}
        if inner != sigma_fa:
            cond3 = False

    cond4 = all(
        fa[lat.join[fa[a]][b]] == lat.join[fa[a]][fa[b]]
        for a in range(lat.n) for b in range(lat.n))

    return (cond1, cond2, cond3, cond4)


# -- statistics used by the subvariety criteria ------------------------------

def class_min_counts(space):
    '''Number of minimal points of each equivalence class, class by class.'''
    counts = []
    for cls in space.classes:
        mins = 0
        for i in cls:
            if not any(j != i and (space.up[j] >> i) & 1 for j in cls):
                mins += 1
        counts.append(mins)
    return tuple(counts)


def height_data(space):
    '''(largest principal up-set, largest class count met by one) of the space.'''
    idx = space.class_index()
    best_points = 0
    best_classes = 0
    for i in range(space.n):
        ups = list(posets.bits(space.up[i]))
        best_points = max(best_points, len(ups))
        best_classes = max(best_classes, len({idx[j] for j in ups}))
    return best_points, best_classes
