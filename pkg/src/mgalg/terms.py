'''Terms over the monadic Goedel signature: parsing, evaluation, identities.

Grammar (ASCII): variables match [a-z][a-z0-9]*, constants are 0 and 1,
connectives are & (or *) for meet, | for join, -> for implication (right
associative), ! for negation, and the prefixes E and A for the existential
and universal quantifiers.  Unary operators bind tightest, then &, then |,
then ->.
'''

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from .config import parallel_map
from .errors import TermSyntaxError, UnboundVariable, UnknownName


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Meet:
    left: object
    right: object


@dataclass(frozen=True)
class Join:
    left: object
    right: object


@dataclass(frozen=True)
class Imp:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class Exists:
    arg: object


@dataclass(frozen=True)
class Forall:
    arg: object


@dataclass(frozen=True)
class Identity:
    lhs: object
    rhs: object
    name: str = ''

    @property
    def variables(self):
        return tuple(sorted(free_variables(self.lhs) | free_variables(self.rhs)))


def free_variables(term):
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, (Zero, One)):
        return set()
    if isinstance(term, (Not, Exists, Forall)):
        return free_variables(term.arg)
    return free_variables(term.left) | free_variables(term.right)


def eval_term(algebra, term, assignment):
    '''Value of term in algebra under an assignment of variable names to indices.'''
    if isinstance(term, Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise UnboundVariable(f'variable {term.name} has no value',
                                  variable=term.name)
    if isinstance(term, Zero):
        return algebra.bottom
    if isinstance(term, One):
        return algebra.top
    if isinstance(term, Meet):
        return algebra.meet(eval_term(algebra, term.left, assignment),
                            eval_term(algebra, term.right, assignment))
    if isinstance(term, Join):
        return algebra.join(eval_term(algebra, term.left, assignment),
                            eval_term(algebra, term.right, assignment))
    if isinstance(term, Imp):
        return algebra.imp(eval_term(algebra, term.left, assignment),
                           eval_term(algebra, term.right, assignment))
    if isinstance(term, Not):
        return algebra.neg(eval_term(algebra, term.arg, assignment))
    if isinstance(term, Exists):
        return algebra.ex[eval_term(algebra, term.arg, assignment)]
    if isinstance(term, Forall):
        return algebra.fa[eval_term(algebra, term.arg, assignment)]
    raise TypeError(f'not a term: {term!r}')


# -- parsing ---------------------------------------------------------------

def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in '()|!=':
            tokens.append((ch, i))
            i += 1
        elif ch in '&*':
            tokens.append(('&', i))
            i += 1
        elif ch == '-':
            if text.startswith('->', i):
                tokens.append(('->', i))
                i += 2
            else:
                raise TermSyntaxError('expected ->', position=i)
        elif ch in '01':
            tokens.append((ch, i))
            i += 1
        elif ch in 'EA':
            tokens.append((ch, i))
            i += 1
        elif ch.islower():
            j = i + 1
            while j < n and (text[j].islower() or text[j].isdigit()):
                j += 1
            tokens.append(('var', i, text[i:j]))
            i = j
        else:
            raise TermSyntaxError(f'unexpected character {ch!r}', position=i)
    tokens.append(('end', n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise TermSyntaxError(f'expected {kind!r}', position=tok[1])
        self.pos += 1
        return tok

    def term(self):
        left = self.or_term()
        if self.peek()[0] == '->':
            self.take()
            return Imp(left, self.term())
        return left

    def or_term(self):
        t = self.and_term()
        while self.peek()[0] == '|':
            self.take()
            t = Join(t, self.and_term())
        return t

    def and_term(self):
        t = self.unary()
        while self.peek()[0] == '&':
            self.take()
            t = Meet(t, self.unary())
        return t

    def unary(self):
        tok = self.peek()
        if tok[0] == '!':
            self.take()
            return Not(self.unary())
        if tok[0] == 'E':
            self.take()
            return Exists(self.unary())
        if tok[0] == 'A':
            self.take()
            return Forall(self.unary())
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok[0] == '0':
            return Zero()
        if tok[0] == '1':
            return One()
        if tok[0] == 'var':
            return Var(tok[2])
        if tok[0] == '(':
            t = self.term()
            self.take(')')
            return t
        raise TermSyntaxError('expected a term', position=tok[1])


def parse_term(text):
    p = _Parser(text)
    t = p.term()
    tok = p.peek()
    if tok[0] != 'end':
        raise TermSyntaxError('trailing input', position=tok[1])
    return t


def parse_identity(text, name=''):
    '''Parse "lhs = rhs"; a bare term t is read as t = 1.'''
    p = _Parser(text)
    lhs = p.term()
    tok = p.peek()
    if tok[0] == '=':
        p.take()
        rhs = p.term()
        tok = p.peek()
    else:
        rhs = One()
    if tok[0] != 'end':
        raise TermSyntaxError('trailing input', position=tok[1])
    return Identity(lhs, rhs, name=name or text.strip())


# -- rendering -------------------------------------------------------------

_PREC = {Imp: 1, Join: 2, Meet: 3}


def render(term):
    '''Minimal-parenthesis text form that parses back to the same tree.'''
    def go(t, ctx):
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Zero):
            return '0'
        if isinstance(t, One):
            return '1'
        if isinstance(t, Not):
            return '!' + go(t.arg, 4)
        if isinstance(t, Exists):
            return 'E ' + go(t.arg, 4)
        if isinstance(t, Forall):
            return 'A ' + go(t.arg, 4)
        prec = _PREC[type(t)]
        if isinstance(t, Imp):
            s = go(t.left, prec + 1) + ' -> ' + go(t.right, prec)
        elif isinstance(t, Join):
            s = go(t.left, prec) + ' | ' + go(t.right, prec + 1)
        else:
            s = go(t.left, prec) + ' & ' + go(t.right, prec + 1)
        return '(' + s + ')' if prec < ctx else s

    return go(term, 0)


def render_identity(identity):
    return render(identity.lhs) + ' = ' + render(identity.rhs)


# -- identity checking -----------------------------------------------------

def check_identity(algebra, identity, parallelism=1):
    '''Return None when the identity holds, else the first counterexample.

    Assignments are scanned lexicographically with variables sorted by name,
    so the reported counterexample is deterministic at any parallelism level.
    '''
    names = identity.variables
    n = algebra.n
    if not names:
        if eval_term(algebra, identity.lhs, {}) != eval_term(algebra, identity.rhs, {}):
            return {}
        return None

    if parallelism <= 1:
        for combo in iproduct(range(n), repeat=len(names)):
            assignment = dict(zip(names, combo))
            if eval_term(algebra, identity.lhs, assignment) != \
                    eval_term(algebra, identity.rhs, assignment):
                return assignment
        return None

    def scan(first):
        for rest in iproduct(range(n), repeat=len(names) - 1):
            assignment = dict(zip(names, (first,) + rest))
            if eval_term(algebra, identity.lhs, assignment) != \
                    eval_term(algebra, identity.rhs, assignment):
                return assignment
        return None

    for hit in parallel_map(scan, range(n), parallelism):
        if hit is not None:
            return hit
    return None


# -- catalog ---------------------------------------------------------------

def _biimp(a, b):
    return Meet(Imp(a, b), Imp(b, a))


def _big_meet(terms):
    t = terms[0]
    for u in terms[1:]:
        t = Meet(t, u)
    return t


def _big_join(terms):
    t = terms[0]
    for u in terms[1:]:
        t = Join(t, u)
    return t


def _leq(a, b):
    '''Encode an order law a <= b as the identity a -> b = 1.'''
    return Imp(a, b)


x, y, z = Var('x'), Var('y'), Var('z')

_FIXED = {
    'M1': Identity(Imp(Forall(x), x), One(), 'M1'),
    'M2': Identity(Forall(Imp(x, Forall(y))), Imp(Exists(x), Forall(y)), 'M2'),
    'M3': Identity(Forall(Imp(Forall(x), y)), Imp(Forall(x), Forall(y)), 'M3'),
    'M4': Identity(Forall(Join(Exists(x), y)), Join(Exists(x), Forall(y)), 'M4'),
    'M5': Identity(Exists(Meet(x, x)), Meet(Exists(x), Exists(x)), 'M5'),
    'M6': Identity(Forall(Join(x, y)), Join(Forall(x), Forall(y)), 'M6'),
    'prelinearity': Identity(Join(Imp(x, y), Imp(y, x)), One(), 'prelinearity'),
    # The quantified-element laws below take c to be E z, which ranges over
    # exactly the image subuniverse as z runs over the carrier.
    'law1': Identity(_big_meet([_biimp(Forall(One()), One()),
                                _biimp(Exists(One()), One()),
                                _biimp(Forall(Zero()), Zero()),
                                _biimp(Exists(Zero()), Zero())]), One(), 'law1'),
    'law2': Identity(_big_meet([_biimp(Forall(Exists(z)), Exists(z)),
                                _biimp(Exists(Exists(z)), Exists(z))]), One(), 'law2'),
    'law3': Identity(_big_meet([_leq(Forall(x), x), _leq(x, Exists(x))]),
                     One(), 'law3'),
    'law4': Identity(_big_meet([_leq(Forall(Meet(x, y)), Forall(y)),
                                _leq(Exists(Meet(x, y)), Exists(y))]),
                     One(), 'law4'),
    'law5': Identity(Forall(Join(x, Exists(z))), Join(Forall(x), Exists(z)), 'law5'),
    'law6': Identity(Exists(Join(x, y)), Join(Exists(x), Exists(y)), 'law6'),
    'law7': Identity(Forall(Meet(x, y)), Meet(Forall(x), Forall(y)), 'law7'),
    'law8': Identity(Exists(Meet(x, Exists(z))), Meet(Exists(x), Exists(z)), 'law8'),
    'law9': Identity(Forall(Imp(x, Exists(z))), Imp(Exists(x), Exists(z)), 'law9'),
    'law10': Identity(_leq(Exists(Imp(x, Exists(z))), Imp(Forall(x), Exists(z))),
                      One(), 'law10'),
    'law11': Identity(Forall(Imp(Exists(z), x)), Imp(Exists(z), Forall(x)), 'law11'),
    'law12': Identity(_leq(Exists(Imp(Exists(z), x)), Imp(Exists(z), Exists(x))),
                      One(), 'law12'),
    'law13': Identity(Forall(Not(x)), Not(Exists(x)), 'law13'),
    'law14': Identity(_leq(Exists(Not(x)), Not(Forall(x))), One(), 'law14'),
}

LAW_NAMES = tuple(f'law{i}' for i in range(1, 15))


def _vars(prefix, count):
    return [Var(f'{prefix}{i}') for i in range(1, count + 1)]


def alpha_identity(k):
    '''Bounded-width law: meets of quantified pairwise joins below some A x_i.'''
    if k < 1:
        raise UnknownName('alpha requires k >= 1', k=k)
    vs = _vars('x', k + 1)
    pairs = [Forall(Join(vs[i], vs[j]))
             for i, j in combinations(range(k + 1), 2)]
    body = Imp(_big_meet(pairs), _big_join([Forall(v) for v in vs]))
    return Identity(body, One(), f'alpha_{k}')


def height_identity(n):
    if n < 2:
        raise UnknownName('H requires n >= 2', n=n)
    vs = _vars('x', n + 1)
    return Identity(_big_join([Imp(vs[i], vs[i + 1]) for i in range(n)]),
                    One(), f'H_{n}')


def height_exists_identity(n):
    if n < 2:
        raise UnknownName('HE requires n >= 2', n=n)
    vs = _vars('x', n + 1)
    return Identity(
        _big_join([Imp(Exists(vs[i]), Exists(vs[i + 1])) for i in range(n)]),
        One(), f'HE_{n}')


def catalog(name, param=None):
    '''Named identity lookup; parametric families take an integer parameter.'''
    if name in _FIXED:
        if param is not None:
            raise UnknownName(f'{name} takes no parameter', name=name)
        return _FIXED[name]
    if name == 'alpha':
        return alpha_identity(1 if param is None else param)
    if name == 'H':
        return height_identity(2 if param is None else param)
    if name == 'HE':
        return height_exists_identity(2 if param is None else param)
    raise UnknownName(f'unknown identity {name!r}', name=name)


def discriminator_term():
    '''The ternary discriminator realized on simple algebras.'''
    agree = Forall(_biimp(x, y))
    return Join(Meet(agree, z), Meet(Not(agree), x))


assert render(parse_term('A(x|y) -> Ax | Ay')) == 'A (x | y) -> A x | A y'
assert parse_term('Ex & Ey') == Meet(Exists(Var('x')), Exists(Var('y')))
