'''Finite monadic Goedel algebras: construction and structure maps.

An algebra is a finite Goedel lattice together with the subuniverse that is the
common image of the two quantifiers; both quantifier tables are derived from
that image by the min/max formulas, and the validating constructor
``build_algebra`` is the single entry point used by products, quotients, sums
and enumeration, so every algebra in circulation has passed the same checks.
'''

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from . import posets
from .config import DEFAULT_CONFIG
from .errors import (BoundExceeded, InvalidInput, NotMonadicFilter,
                     NotMRelativelyComplete, NotPrelinear, NotSubuniverse)
from .lattices import FiniteLattice, lattice_from_pairs, lattice_of_upsets


class FiniteMGAlgebra:
    '''A finite Goedel algebra with quantifiers determined by their image.

    ex[a] is the least image element above a, fa[a] the greatest below a.
    '''

    def __init__(self, lat, exists_image):
        self.lat = lat
        self.exists_image = tuple(sorted(set(exists_image)))
        mask = 0
        for c in self.exists_image:
            mask |= 1 << c
        self.image_mask = mask
        self.ex = tuple(lat.fold_meet(posets.bits(lat.up[a] & mask))
                        for a in range(lat.n))
        self.fa = tuple(lat.fold_join(posets.bits(lat.down[a] & mask))
                        for a in range(lat.n))
        for a in range(lat.n):
            assert lat.leq(a, self.ex[a]) and (mask >> self.ex[a]) & 1, \
                'least image element above a missing'
            assert lat.leq(self.fa[a], a) and (mask >> self.fa[a]) & 1, \
                'greatest image element below a missing'

    # -- lattice delegates -------------------------------------------------
    @property
    def n(self):
        return self.lat.n

    @property
    def bottom(self):
        return self.lat.bottom

    @property
    def top(self):
        return self.lat.top

    def leq(self, a, b):
        return self.lat.leq(a, b)

    def meet(self, a, b):
        return self.lat.meet[a][b]

    def join(self, a, b):
        return self.lat.join[a][b]

    def imp(self, a, b):
        return self.lat.imp[a][b]

    def neg(self, a):
        return self.lat.imp[a][self.lat.bottom]

    def label(self, a):
        return self.lat.label(a)

    def labels(self):
        return tuple(self.lat.label(a) for a in range(self.n))

    def image_is_chain(self):
        c = self.exists_image
        return all(self.leq(a, b) or self.leq(b, a)
                   for i, a in enumerate(c) for b in c[i + 1:])

    def validate(self):
        '''Assert the monadic axioms; construction bugs fail loudly here.'''
        lat, ex, fa = self.lat, self.ex, self.fa
        top = lat.top
        assert set(ex) == set(fa) == set(self.exists_image)
        for a in range(lat.n):
            assert fa[ex[a]] == ex[a] and ex[fa[a]] == fa[a]
            assert ex[self.meet(a, a)] == self.meet(ex[a], ex[a])
            for b in range(lat.n):
                assert fa[self.imp(a, fa[b])] == self.imp(ex[a], fa[b])
                assert fa[self.imp(fa[a], b)] == self.imp(fa[a], fa[b])
                assert fa[self.join(ex[a], b)] == self.join(ex[a], fa[b])
        assert fa[top] == top and ex[lat.bottom] == lat.bottom
        return True

    def __repr__(self):
        return f'FiniteMGAlgebra(n={self.n}, image={len(self.exists_image)})'


def build_algebra(order, exists_image, labels=None, config=None):
    '''Validating constructor.

    order: a FiniteLattice, or a (size, pairs) description of one.
    exists_image: the intended common image of the quantifiers.

    Raises InvalidOrder / NotDistributive for bad orders, NotPrelinear when the
    lattice is not a Goedel algebra, NotSubuniverse when the image is not
    closed under the lattice operations, and NotMRelativelyComplete with a
    witnessing triple (c1, c2, a) when the quantifiers cannot exist.
    '''
    if isinstance(order, FiniteLattice):
        lat = order
    else:
        size, pairs = order
        lat = lattice_from_pairs(size, pairs, labels=labels)
    n = lat.n

    for a in range(n):
        for b in range(a + 1, n):
            if lat.join[lat.imp[a][b]][lat.imp[b][a]] != lat.top:
                raise NotPrelinear(
                    'prelinearity fails', pair=(lat.label(a), lat.label(b)))

    image = sorted(set(exists_image))
    if not image or not all(0 <= c < n for c in image):
        raise InvalidInput('exists_image outside carrier', image=image)
    if lat.bottom not in image or lat.top not in image:
        raise NotSubuniverse('image must contain the bounds',
                             image=[lat.label(c) for c in image])
    ops = {'meet': lat.meet, 'join': lat.join, 'imp': lat.imp}
    iset = set(image)
    for name, table in ops.items():
        for c1 in image:
            for c2 in image:
                if table[c1][c2] not in iset:
                    raise NotSubuniverse(
                        f'image not closed under {name}',
                        operation=name, pair=(lat.label(c1), lat.label(c2)))

    mask = 0
    for c in image:
        mask |= 1 << c
    fa = [lat.fold_join(posets.bits(lat.down[a] & mask)) for a in range(n)]
    # (s2) reduces to a single candidate: c1 <= c2 v a forces c1 <= c2 v max,
    # where max is the greatest image element below a.
    for a in range(n):
        for c1 in image:
            for c2 in image:
                if lat.leq(c1, lat.join[c2][a]) and not lat.leq(c1, lat.join[c2][fa[a]]):
                    raise NotMRelativelyComplete(
                        'relative completeness fails',
                        c1=lat.label(c1), c2=lat.label(c2), a=lat.label(a))

    algebra = FiniteMGAlgebra(lat, image)
    algebra.validate()
    return algebra


@dataclass(frozen=True)
class Classification:
    fsi: bool
    si: bool
    simple: bool


def classify(algebra):
    '''Finitely subdirectly irreducible / subdirectly irreducible / simple.

    In the finite case the first two agree; all three are False for the
    one-element algebra.
    '''
    if algebra.n < 2:
        return Classification(False, False, False)
    fsi = algebra.image_is_chain()
    simple = fsi and len(algebra.exists_image) == 2
    return Classification(fsi, fsi, simple)


@dataclass
class HomWitness:
    '''A checked homomorphism between finite algebras.

    mapping[a] is the image of a.  With godel_only set, only the lattice and
    implication structure is required to be preserved (used for quotients by
    plain lattice filters, whose projections need not respect quantifiers).
    '''

    source: FiniteMGAlgebra
    target: FiniteMGAlgebra
    mapping: tuple
    godel_only: bool = False

    def __post_init__(self):
        self.mapping = tuple(self.mapping)
        A, B, h = self.source, self.target, self.mapping
        assert len(h) == A.n and all(0 <= v < B.n for v in h)
        assert h[A.bottom] == B.bottom and h[A.top] == B.top
        for a in range(A.n):
            for b in range(A.n):
                assert h[A.meet(a, b)] == B.meet(h[a], h[b])
                assert h[A.join(a, b)] == B.join(h[a], h[b])
                assert h[A.imp(a, b)] == B.imp(h[a], h[b])
            if not self.godel_only:
                assert h[A.ex[a]] == B.ex[h[a]]
                assert h[A.fa[a]] == B.fa[h[a]]

    @property
    def injective(self):
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def surjective(self):
        return len(set(self.mapping)) == self.target.n

    @property
    def is_isomorphism(self):
        return self.injective and self.surjective


def generate_subalgebra(algebra, seeds):
    '''Indices of the subalgebra generated by seeds (bounds always included).'''
    current = {algebra.bottom, algebra.top} | set(seeds)
    if not all(0 <= s < algebra.n for s in current):
        raise InvalidInput('seed outside carrier', seeds=sorted(seeds))
    while True:
        new = set()
        elems = sorted(current)
        for a in elems:
            new.add(algebra.ex[a])
            new.add(algebra.fa[a])
            for b in elems:
                new.add(algebra.meet(a, b))
                new.add(algebra.join(a, b))
                new.add(algebra.imp(a, b))
        if new <= current:
            return tuple(sorted(current))
        current |= new


def subalgebra_on(algebra, subset):
    '''The algebra on a quantifier-closed subuniverse, with its embedding.'''
    elems = tuple(sorted(set(subset)))
    pos = {a: i for i, a in enumerate(elems)}
    pairs = [(pos[a], pos[b]) for a in elems for b in elems
             if algebra.leq(a, b)]
    labels = [algebra.label(a) for a in elems]
    image = [pos[a] for a in elems if a in set(algebra.exists_image)]
    sub = build_algebra((len(elems), pairs), image, labels=labels)
    inclusion = {v: k for k, v in pos.items()}
    embed = HomWitness(sub, algebra, tuple(inclusion[i] for i in range(len(elems))))
    return sub, embed


def exists_reduct(algebra):
    '''The image subalgebra with identity quantifiers.'''
    elems = tuple(algebra.exists_image)
    pos = {a: i for i, a in enumerate(elems)}
    pairs = [(pos[a], pos[b]) for a in elems for b in elems if algebra.leq(a, b)]
    labels = [algebra.label(a) for a in elems]
    return build_algebra((len(elems), pairs), list(range(len(elems))),
                         labels=labels)


def product_algebra(factors, config=None):
    '''Direct product with componentwise quantifiers.'''
    cfg = config or DEFAULT_CONFIG
    if not factors:
        raise InvalidInput('empty product')
    size = 1
    for f in factors:
        size *= f.n
    if size > cfg.materialize_cap:
        raise BoundExceeded('product too large', size=size,
                            cap=cfg.materialize_cap)
    elements = list(iproduct(*(range(f.n) for f in factors)))
    prod = algebra_on_tuples(factors, elements)
    return prod


def algebra_on_tuples(factors, elements):
    '''The algebra on a set of product tuples closed under all operations.'''
    elements = list(elements)
    pos = {t: i for i, t in enumerate(elements)}
    pairs = []
    for t in elements:
        for u in elements:
            if all(f.leq(a, b) for f, a, b in zip(factors, t, u)):
                pairs.append((pos[t], pos[u]))
    labels = ['(' + ','.join(f.label(a) for f, a in zip(factors, t)) + ')'
              for t in elements]
    image_sets = [set(f.exists_image) for f in factors]
    image = [pos[t] for t in elements
             if all(a in s for a, s in zip(t, image_sets))]
    algebra = build_algebra((len(elements), pairs), image, labels=labels)
    algebra.element_tuples = tuple(elements)
    return algebra


def closure_in_product(factors, seeds):
    '''Close a set of tuples under all componentwise operations.

    Works tuple by tuple so large products are never materialized.
    '''
    def ex(t):
        return tuple(f.ex[a] for f, a in zip(factors, t))

    def fa(t):
        return tuple(f.fa[a] for f, a in zip(factors, t))

    bottom = tuple(f.bottom for f in factors)
    top = tuple(f.top for f in factors)
    current = {bottom, top} | {tuple(s) for s in seeds}
    frontier = sorted(current)
    while frontier:
        new = set()
        elems = sorted(current)
        for t in frontier:
            new.add(ex(t))
            new.add(fa(t))
            for u in elems:
                for op in ('meet', 'join', 'imp'):
                    new.add(tuple(getattr(f, op)(a, b)
                                  for f, a, b in zip(factors, t, u)))
                    new.add(tuple(getattr(f, op)(b, a)
                                  for f, a, b in zip(factors, t, u)))
        frontier = sorted(new - current)
        current |= new
    return sorted(current)


def _filter_classes(algebra, members):
    '''Equivalence classes of the congruence a ~ b iff a<->b lies in the filter.'''
    fset = set(members)
    classes = []
    assigned = {}
    for a in range(algebra.n):
        if a in assigned:
            continue
        block = [b for b in range(algebra.n)
                 if algebra.imp(a, b) in fset and algebra.imp(b, a) in fset]
        for b in block:
            assigned[b] = len(classes)
        classes.append(tuple(block))
    return classes, assigned


def _quotient_from_classes(algebra, classes, assigned):
    reps = [cls[0] for cls in classes]
    k = len(classes)
    pairs = [(i, j) for i in range(k) for j in range(k)
             if assigned[algebra.meet(reps[i], reps[j])] == i]
    labels = ['[' + algebra.label(r) + ']' for r in reps]
    image = sorted({assigned[c] for c in algebra.exists_image})
    quo = build_algebra((k, pairs), image, labels=labels)
    return quo, tuple(assigned[a] for a in range(algebra.n))


def validate_monadic_filter(algebra, members):
    '''Raise NotMonadicFilter unless members is a quantifier-closed filter.'''
    fset = set(members)
    if not fset or not all(0 <= f < algebra.n for f in fset):
        raise NotMonadicFilter('filter must be a nonempty subset of the carrier')
    if algebra.top not in fset:
        raise NotMonadicFilter('filter must contain the top element')
    for a in fset:
        for b in range(algebra.n):
            if algebra.leq(a, b) and b not in fset:
                raise NotMonadicFilter('filter not upward closed',
                                       below=algebra.label(a), above=algebra.label(b))
        for b in fset:
            if algebra.meet(a, b) not in fset:
                raise NotMonadicFilter('filter not meet closed',
                                       pair=(algebra.label(a), algebra.label(b)))
        if algebra.fa[a] not in fset:
            raise NotMonadicFilter('filter not closed under the universal quantifier',
                                   element=algebra.label(a))


def quotient_by_filter(algebra, members):
    '''Quotient by a monadic filter, with the projection as a checked witness.'''
    validate_monadic_filter(algebra, members)
    classes, assigned = _filter_classes(algebra, members)
    quo, mapping = _quotient_from_classes(algebra, classes, assigned)
    return quo, HomWitness(algebra, quo, mapping)


def godel_quotient_by_filter(algebra, members):
    '''Quotient of the Goedel reduct by a plain lattice filter.

    The members need not be quantifier closed; the quotient carries the image
    of the original quantifier image, and the projection witness is marked
    godel_only.
    '''
    fset = set(members)
    if not fset or algebra.top not in fset:
        raise NotMonadicFilter('filter must contain the top element')
    for a in fset:
        for b in range(algebra.n):
            if algebra.leq(a, b) and b not in fset:
                raise NotMonadicFilter('filter not upward closed')
        for b in fset:
            if algebra.meet(a, b) not in fset:
                raise NotMonadicFilter('filter not meet closed')
    classes, assigned = _filter_classes(algebra, members)
    quo, mapping = _quotient_from_classes(algebra, classes, assigned)
    witness = HomWitness(algebra, quo, mapping, godel_only=True)
    return quo, witness


def ordinal_sum(lower, upper, exists_image):
    '''Glue the top of lower to the bottom of upper; image supplied by caller.'''
    lowlat = lower.lat if isinstance(lower, FiniteMGAlgebra) else lower
    uplat = upper.lat if isinstance(upper, FiniteMGAlgebra) else upper
    shift = lowlat.n - 1

    def up_index(j):
        return j + shift if j != uplat.bottom else lowlat.top

    size = lowlat.n + uplat.n - 1
    pairs = [(a, b) for a in range(lowlat.n) for b in range(lowlat.n)
             if lowlat.leq(a, b)]
    remap = {}
    nxt = lowlat.n
    for j in range(uplat.n):
        if j == uplat.bottom:
            remap[j] = lowlat.top
        else:
            remap[j] = nxt
            nxt += 1
    pairs += [(remap[a], remap[b]) for a in range(uplat.n)
              for b in range(uplat.n) if uplat.leq(a, b)]
    labels = [lowlat.label(a) for a in range(lowlat.n)]
    labels += [uplat.label(j) for j in range(uplat.n) if j != uplat.bottom]
    return build_algebra((size, pairs), exists_image, labels=labels)


def _prime_data(algebra):
    primes = algebra.lat.join_irreducibles()
    k = len(primes)
    up = []
    erel = []
    for i, p in enumerate(primes):
        um = 0
        em = 0
        for j, q in enumerate(primes):
            if algebra.leq(p, q):
                um |= 1 << j
            if algebra.ex[p] == algebra.ex[q]:
                em |= 1 << j
        up.append(um)
        erel.append(em)
    extras = tuple(
        ((1 if (algebra.image_mask >> p) & 1 else 0) << 16)
        | bin(erel[i]).count('1')
        for i, p in enumerate(primes))
    return primes, tuple(up), tuple(erel), extras


def iter_isomorphisms(A, B):
    '''Yield isomorphism witnesses A -> B, deterministically ordered.'''
    if A.n != B.n or len(A.exists_image) != len(B.exists_image):
        return
    pa, upa, ea, xa = _prime_data(A)
    pb, upb, eb, xb = _prime_data(B)
    for phi in posets.poset_isomorphisms(
            len(pa), upa, len(pb), upb, xa, xb, pair_rels=[(ea, eb)]):
        mapping = []
        for a in range(A.n):
            img = [pb[phi[i]] for i, p in enumerate(pa) if A.leq(p, a)]
            mapping.append(B.lat.fold_join(img))
        if len(set(mapping)) != A.n:
            continue
        ok = all(
            mapping[A.ex[a]] == B.ex[mapping[a]]
            and mapping[A.fa[a]] == B.fa[mapping[a]]
            for a in range(A.n))
        if not ok:
            continue
        yield HomWitness(A, B, tuple(mapping))


def find_isomorphism(A, B):
    '''First isomorphism in canonical search order, or None.'''
    for w in iter_isomorphisms(A, B):
        return w
    return None


def canonical_invariant(algebra):
    '''Isomorphism-invariant key used to bucket algebras during enumeration.'''
    primes, up, erel, extras = _prime_data(algebra)
    sigs, matrix = posets.canonical_key(len(primes), up, extras)
    return (algebra.n, len(algebra.exists_image), sigs, matrix)


def enumerate_algebras(max_size, config=None):
    '''All algebras with at most max_size elements, one per isomorphism class.

    Carriers are the up-set lattices of small posets; every admissible image
    subuniverse is attached, and duplicates are removed by exact isomorphism.
    '''
    cfg = config or DEFAULT_CONFIG
    if max_size < 2:
        raise InvalidInput('max_size must be at least 2', max_size=max_size)
    if max_size > cfg.enumeration_cap:
        raise BoundExceeded('enumeration bound exceeded',
                            max_size=max_size, cap=cfg.enumeration_cap)
    found = {}
    order = []
    for np_, pup in posets.enumerate_posets(max_size - 1, max_downsets=max_size):
        lat, _ = lattice_of_upsets(np_, pup)
        if lat.n > max_size:
            continue
        prelinear = all(
            lat.join[lat.imp[a][b]][lat.imp[b][a]] == lat.top
            for a in range(lat.n) for b in range(a + 1, lat.n))
        if not prelinear:
            continue
        middles = [e for e in range(lat.n) if e not in (lat.bottom, lat.top)]
        for r in range(len(middles) + 1):
            for extra in combinations(middles, r):
                image = [lat.bottom, lat.top] + list(extra)
                try:
                    algebra = build_algebra(lat, image)
                except (NotSubuniverse, NotMRelativelyComplete):
                    continue
                key = canonical_invariant(algebra)
                bucket = found.setdefault(key, [])
                if any(find_isomorphism(algebra, other) for other in bucket):
                    continue
                bucket.append(algebra)
                order.append((key, len(bucket), algebra))
    order.sort(key=lambda t: (t[0][0], t[0][1], t[0][2], t[0][3], t[1]))
    return [algebra for _, _, algebra in order]
