'''Finite chains with designated image subchains, and two infinite witnesses.

A coordinate vector (m, (m_0, ..., m_r)) describes the chain with m+2 elements
a_0 < ... < a_{m+1} whose image keeps the bounds, drops the m_i elements sitting
strictly between consecutive image points, and therefore satisfies
r + sum(m_i) = m.  The characteristic chain is the lexicographic product of two
copies of the natural numbers with a top added; every coordinate chain is a
quotient of a finite subalgebra of it.  The second witness lives in a power of
the standard interval chain and certifies that finitely many generators can
produce infinitely many elements.
'''

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .core import HomWitness, build_algebra
from .errors import InvalidCoordinates, InvalidInput, TruncationTooShort


@dataclass(frozen=True)
class ChainCoordinates:
    '''Shape (m, parts) of a finite chain with designated image.'''

    m: int
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, 'parts', tuple(int(p) for p in self.parts))
        if self.m < 0 or not self.parts or any(p < 0 for p in self.parts):
            raise InvalidCoordinates('parts must be nonnegative and nonempty',
                                     m=self.m, parts=self.parts)
        r = len(self.parts) - 1
        if r + sum(self.parts) != self.m:
            raise InvalidCoordinates(
                'parts must satisfy r + sum(parts) = m',
                m=self.m, parts=self.parts)

    @property
    def size(self):
        return self.m + 2

    def image_positions(self):
        '''Indices of the image elements a_0, b_1, ..., b_r, a_{m+1}.'''
        pos = [0]
        acc = 0
        for j, p in enumerate(self.parts[:-1], start=1):
            acc += p
            pos.append(acc + j)
        pos.append(self.m + 1)
        return tuple(sorted(set(pos)))

    def display(self):
        return f'({self.m},({",".join(map(str, self.parts))}))'

    @classmethod
    def parse(cls, text):
        try:
            values = [int(v) for v in str(text).replace(' ', '').split(',') if v != '']
        except ValueError:
            raise InvalidCoordinates(f'cannot parse coordinates {text!r}')
        if not values:
            raise InvalidCoordinates('empty coordinates')
        m, parts = values[0], tuple(values[1:])
        if not parts:
            parts = (m,)
        return cls(m, parts)


def all_coordinates(max_m):
    '''Every coordinate vector with m at most max_m, in lexicographic order.'''
    out = []
    for m in range(max_m + 1):
        for r in range(m + 1):
            total = m - r
            for cut in iproduct(range(total + 1), repeat=r):
                if r == 0:
                    parts = (total,)
                    out.append(ChainCoordinates(m, parts))
                    continue
                if sum(cut) <= total:
                    rest = total - sum(cut)
                    parts = cut + (rest,)
                    out.append(ChainCoordinates(m, parts))
    seen = set()
    unique = []
    for c in out:
        if (c.m, c.parts) not in seen:
            seen.add((c.m, c.parts))
            unique.append(c)
    return unique


def build_chain(coords):
    '''The chain algebra described by a coordinate vector.'''
    if not isinstance(coords, ChainCoordinates):
        coords = ChainCoordinates(*coords)
    size = coords.size
    pairs = [(i, i + 1) for i in range(size - 1)]
    labels = [f'a{i}' for i in range(size)]
    return build_algebra((size, pairs), coords.image_positions(), labels=labels)


# -- the characteristic chain ---------------------------------------------

class _Top:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'Top'


TOP = _Top()


def _check_element(x):
    if x is TOP:
        return
    if (isinstance(x, tuple) and len(x) == 2
            and all(isinstance(v, int) and v >= 0 for v in x)):
        return
    raise InvalidInput(f'not a characteristic chain element: {x!r}')


def lex_leq(x, y):
    _check_element(x)
    _check_element(y)
    if y is TOP:
        return True
    if x is TOP:
        return False
    return x <= y


def char_chain_op(op, x, y=None):
    '''Evaluate one operation of the characteristic chain.

    op is one of meet, join, imp, exists, forall; elements are TOP or pairs
    (a, b) of nonnegative integers ordered lexicographically.
    '''
    _check_element(x)
    if op in ('meet', 'join', 'imp'):
        if y is None:
            raise InvalidInput(f'{op} needs two arguments')
        _check_element(y)
        if op == 'meet':
            return x if lex_leq(x, y) else y
        if op == 'join':
            return y if lex_leq(x, y) else x
        return TOP if lex_leq(x, y) else y
    if y is not None:
        raise InvalidInput(f'{op} takes one argument')
    if op == 'exists':
        if x is TOP:
            return TOP
        a, b = x
        return (a, 0) if b == 0 else (a + 1, 0)
    if op == 'forall':
        if x is TOP:
            return TOP
        a, _ = x
        return (a, 0)
    raise InvalidInput(f'unknown operation {op!r}')


@dataclass
class CharChainEmbedding:
    '''A finite subuniverse of the characteristic chain mapped onto a chain.'''

    coords: ChainCoordinates
    elements: tuple          # members of S, bottom to top
    subalgebra: object       # the algebra structure induced on S
    target: object           # build_chain(coords)
    witness: HomWitness      # surjection from the subalgebra onto the target


def char_chain_embedding(coords):
    '''Realize a coordinate chain as a quotient of a characteristic subchain.

    S consists of the pairs (i, j) with i indexing an image block and
    j < parts[i] + 1, plus (r+1, 0) and the top; collapsing the last two
    points onto the top of the target chain is the required surjection.
    '''
    if not isinstance(coords, ChainCoordinates):
        coords = ChainCoordinates(*coords)
    parts = coords.parts
    r = len(parts) - 1
    elements = [(i, j) for i in range(r + 1) for j in range(parts[i] + 1)]
    elements.append((r + 1, 0))
    elements.append(TOP)

    index = {e: k for k, e in enumerate(elements)}

    def idx(e):
        return index[e]

    for e in elements:
        for name in ('exists', 'forall'):
            assert char_chain_op(name, e) in index, \
                f'{name} escapes the subuniverse at {e!r}'
        for f in elements:
            for name in ('meet', 'join', 'imp'):
                assert char_chain_op(name, e, f) in index, \
                    f'{name} escapes the subuniverse at {e!r}, {f!r}'

    size = len(elements)
    pairs = [(a, b) for a in range(size) for b in range(size)
             if lex_leq(elements[a], elements[b])]
    image = [k for k, e in enumerate(elements)
             if e is TOP or char_chain_op('exists', e) == e]
    labels = ['Top' if e is TOP else f'({e[0]},{e[1]})' for e in elements]
    sub = build_algebra((size, pairs), image, labels=labels)

    for a in range(size):
        assert sub.ex[a] == idx(char_chain_op('exists', elements[a]))
        assert sub.fa[a] == idx(char_chain_op('forall', elements[a]))

    target = build_chain(coords)
    block_starts = []
    acc = 0
    for i, p in enumerate(parts):
        block_starts.append(acc + i)
        acc += p
    mapping = []
    for e in elements:
        if e is TOP or e == (r + 1, 0):
            mapping.append(coords.m + 1)
        else:
            i, j = e
            mapping.append(block_starts[i] + j)
    witness = HomWitness(sub, target, tuple(mapping))
    assert witness.surjective
    return CharChainEmbedding(coords, tuple(elements), sub, target, witness)


# -- non-local-finiteness witness ------------------------------------------

def non_local_finite_witness(k, truncation):
    '''First k members of a strictly growing single-generator sequence.

    The ambient algebra is a power of the interval chain whose quantifiers act
    coordinatewise through infima over the whole vector; vectors are truncated
    to the given length, which must exceed k so the infima are exact.  Each
    step joins the previous element with the implication into its universal
    part; the closed form keeps coordinate n at 1 - 1/n until position n
    reaches the step index, after which it is 1.
    '''
    if k < 1:
        raise InvalidInput('k must be at least 1', k=k)
    if truncation < k + 1:
        raise TruncationTooShort(
            'truncation must be at least k + 1', k=k, truncation=truncation)

    def godel_imp(u, v):
        return Fraction(1) if u <= v else v

    vec = tuple(1 - Fraction(1, n) for n in range(1, truncation + 1))
    out = [vec]
    for _ in range(k - 1):
        prev = out[-1]
        floor = min(prev)
        nxt = tuple(max(c, godel_imp(c, floor)) for c in prev)
        out.append(nxt)

    for step, v in enumerate(out, start=1):
        expected = tuple(
            Fraction(1) if n < step else 1 - Fraction(1, n)
            for n in range(1, truncation + 1))
        assert v == expected, 'closed form mismatch'
    assert len(set(out)) == k, 'witness terms must be pairwise distinct'
    return out
