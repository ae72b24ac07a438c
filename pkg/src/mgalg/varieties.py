'''Subvariety structure: width, height, membership, and chain embeddings.

Width of a finitely subdirectly irreducible algebra is computed three
independent ways (least k for the bounded-width law, largest orthogonal set,
fewest image-avoiding prime filters meeting in the top) and the results are
required to agree.  Heights come from the dual space and are spot-verified
equationally when the assignment space is small enough to scan.
'''

from dataclasses import dataclass
from itertools import combinations

from . import terms
from .core import HomWitness, classify, godel_quotient_by_filter, product_algebra
from .duality import class_min_counts, dual_space, height_data
from .errors import InvalidInput, NotFSI
from .posets import bits


@dataclass(frozen=True)
class VarietyTag:
    '''One of the classified families: W (width), H (height), HE (image height).'''

    family: str
    param: int

    def __post_init__(self):
        if self.family not in ('W', 'H', 'HE'):
            raise InvalidInput(f'unknown variety family {self.family!r}')
        if self.family == 'W' and self.param < 1:
            raise InvalidInput('W takes parameters from 1 up', param=self.param)
        if self.family in ('H', 'HE') and self.param < 2:
            raise InvalidInput(f'{self.family} takes parameters from 2 up',
                               param=self.param)

    def identity(self):
        if self.family == 'W':
            return terms.alpha_identity(self.param)
        if self.family == 'H':
            return terms.height_identity(self.param)
        return terms.height_exists_identity(self.param)

    def __str__(self):
        return f'{self.family}_{self.param}'


def membership(algebra, tag, parallelism=1):
    '''(holds, counterexample) for the defining identity of the tagged variety.'''
    cex = terms.check_identity(algebra, tag.identity(), parallelism=parallelism)
    return cex is None, cex


@dataclass
class WidthReport:
    width: int
    orthogonal_set: tuple     # element indices, pairwise joins equal to top
    prime_generators: tuple   # image-avoiding primes whose join is the top


def _max_orthogonal(algebra):
    '''A maximum set of non-top elements whose pairwise joins are the top.'''
    n = algebra.n
    verts = [a for a in range(n) if a != algebra.top]
    adj = {a: {b for b in verts if b != a
               and algebra.join(a, b) == algebra.top} for a in verts}
    best = []

    def grow(chosen, candidates):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for i, v in enumerate(candidates):
            if len(chosen) + len(candidates) - i <= len(best):
                return
            grow(chosen + [v], [w for w in candidates[i + 1:] if w in adj[v]])

    grow([], verts)
    return tuple(best)


def width_of(algebra):
    '''Width of a finitely subdirectly irreducible algebra, three ways.

    Raises NotFSI when the image is not a chain.  The three computations
    (least parameter of the width law, maximum orthogonal set, least number of
    image-avoiding primes joining to the top) must coincide.
    '''
    if not classify(algebra).fsi:
        raise NotFSI('width is defined for finitely subdirectly irreducible algebras')

    orth = _max_orthogonal(algebra)
    k_orth = len(orth)

    k_alpha = None
    for k in range(1, algebra.n + 1):
        holds, _ = membership(algebra, VarietyTag('W', k))
        if holds:
            k_alpha = k
            break
    assert k_alpha is not None, 'width law must hold at some level'

    eligible = [p for p in algebra.lat.join_irreducibles()
                if algebra.ex[p] == algebra.top]
    primes = None
    for r in range(1, len(eligible) + 1):
        for combo in combinations(eligible, r):
            if algebra.lat.fold_join(combo) == algebra.top:
                primes = combo
                break
        if primes is not None:
            break
    assert primes is not None, 'some image-avoiding prime family joins to the top'

    assert k_alpha == k_orth == len(primes), \
        (k_alpha, k_orth, len(primes))
    return WidthReport(k_alpha, orth, primes)


@dataclass
class ChainEmbedding:
    '''A product of image-equipped chain quotients embedding the algebra.

    The embedding preserves the Goedel operations but not the quantifiers in
    general; composed with each projection it stays injective on the image.
    '''

    width: int
    prime_generators: tuple
    factors: tuple            # chain algebras with the projected images
    witness: HomWitness       # godel_only embedding into the product
    image_injections: tuple   # per factor: projection restricted to the image is injective


def chain_embedding(algebra, config=None):
    '''Embed a finitely subdirectly irreducible algebra into a chain product.'''
    report = width_of(algebra)
    quotients = []
    mappings = []
    for p in report.prime_generators:
        filt = list(bits(algebra.lat.up[p]))
        quo, wit = godel_quotient_by_filter(algebra, filt)
        assert quo.lat.is_chain, 'quotient by a prime filter must be a chain'
        quotients.append(quo)
        mappings.append(wit.mapping)

    prod = product_algebra(quotients, config=config)
    pos = {t: i for i, t in enumerate(prod.element_tuples)}
    mapping = tuple(pos[tuple(m[a] for m in mappings)] for a in range(algebra.n))
    witness = HomWitness(algebra, prod, mapping, godel_only=True)
    assert witness.injective, 'chain product embedding must be injective'

    image_injections = []
    for m in mappings:
        restricted = [m[c] for c in algebra.exists_image]
        image_injections.append(len(set(restricted)) == len(restricted))
    assert all(image_injections), \
        'projections must stay injective on the quantifier image'
    return ChainEmbedding(report.width, report.prime_generators,
                          tuple(quotients), witness, tuple(image_injections))


_HEIGHT_SCAN_BUDGET = 200000


def height_params(algebra, parallelism=1):
    '''Least parameters (nH, nHE) for the two height laws.

    Computed from the dual space (longest principal up-set, most classes met
    by one) and verified equationally whenever the scan fits the budget.
    '''
    if algebra.n == 1:
        return 2, 2
    space = dual_space(algebra)
    max_points, max_classes = height_data(space)
    nh, nhe = max(2, max_points + 1), max(2, max_classes + 1)

    for tag, value in ((VarietyTag('H', nh), nh), (VarietyTag('HE', nhe), nhe)):
        if algebra.n ** (value + 1) <= _HEIGHT_SCAN_BUDGET:
            holds, cex = membership(algebra, tag, parallelism=parallelism)
            assert holds, (str(tag), cex)
        if value > 2 and algebra.n ** value <= _HEIGHT_SCAN_BUDGET:
            lower = VarietyTag(tag.family, value - 1)
            holds, _ = membership(algebra, lower, parallelism=parallelism)
            assert not holds, f'{lower} should fail'
    return nh, nhe


def discriminator_check(algebra):
    '''Whether the ternary discriminator term realizes the discriminator.

    Returns (True, None) or (False, first mismatching triple with the values
    the term produced and expected).
    '''
    t = terms.discriminator_term()
    for xv in range(algebra.n):
        for yv in range(algebra.n):
            for zv in range(algebra.n):
                got = terms.eval_term(algebra, t, {'x': xv, 'y': yv, 'z': zv})
                want = zv if xv == yv else xv
                if got != want:
                    return False, {
                        'x': algebra.label(xv), 'y': algebra.label(yv),
                        'z': algebra.label(zv),
                        'got': algebra.label(got), 'expected': algebra.label(want)}
    return True, None


def dual_membership(algebra, tag):
    '''The dual-space shape criterion for the tagged variety.'''
    space = dual_space(algebra)
    if tag.family == 'W':
        return all(c <= tag.param for c in class_min_counts(space))
    max_points, max_classes = height_data(space)
    if tag.family == 'H':
        return max_points <= tag.param - 1
    return max_classes <= tag.param - 1
