'''Dense, regular, and boolean elements, and the double-negation collapse.

Every algebra has a boolean subalgebra of regular elements closed under both
quantifiers, and a quantified dense filter whose quotient satisfies the
two-level image height law.  In the width-one variety the collapse is inner:
the elements whose universal part is regular form an algebra under the
double-negation existential, the map a |-> a v ~~(A a) is a surjection onto
it, and its kernel is exactly the quantified dense filter, so the collapse is
isomorphic to the quotient and that quotient is semisimple.
'''

from dataclasses import dataclass

from .core import (HomWitness, build_algebra, find_isomorphism,
                   quotient_by_filter, validate_monadic_filter)
from .duality import congruence_lattice, partition_meet
from .errors import NotInW1
from .varieties import VarietyTag, membership


@dataclass
class SpecialElements:
    dense: tuple      # negation is the bottom
    regular: tuple    # fixed by double negation
    boolean: tuple    # complemented


def special_elements(algebra):
    '''Classify elements; the boolean and regular sets coincide here.'''
    dense = tuple(a for a in range(algebra.n)
                  if algebra.neg(a) == algebra.bottom)
    regular = tuple(a for a in range(algebra.n)
                    if algebra.neg(algebra.neg(a)) == a)
    boolean = tuple(a for a in range(algebra.n)
                    if algebra.join(a, algebra.neg(a)) == algebra.top)
    assert boolean == regular, 'regular and complemented elements must agree'
    dset = set(dense)
    assert algebra.top in dset
    for a in dense:
        for b in dense:
            assert algebra.meet(a, b) in dset
        for b in range(algebra.n):
            if algebra.leq(a, b):
                assert b in dset
    rset = set(regular)
    for a in regular:
        assert algebra.ex[a] in rset and algebra.fa[a] in rset
        for b in regular:
            assert algebra.meet(a, b) in rset
            assert algebra.imp(a, b) in rset
    return SpecialElements(dense, regular, boolean)


def d_forall_filter(algebra):
    '''The filter of elements whose universal part is dense.'''
    members = tuple(a for a in range(algebra.n)
                    if algebra.neg(algebra.fa[a]) == algebra.bottom)
    validate_monadic_filter(algebra, members)
    return members


def quotient_by_d_forall(algebra):
    '''Quotient by the quantified dense filter; it lands in HE_2.'''
    members = d_forall_filter(algebra)
    quo, witness = quotient_by_filter(algebra, members)
    holds, cex = membership(quo, VarietyTag('HE', 2))
    assert holds, cex
    return quo, witness


def reg_forall_algebra(algebra):
    '''The algebra of elements with regular universal part (width one only).

    The carrier keeps the order and the universal quantifier; the existential
    is replaced by double negation, whose image is the set of regular
    elements, so the construction hands that image to the general builder.
    '''
    holds, cex = membership(algebra, VarietyTag('W', 1))
    if not holds:
        raise NotInW1('the inner collapse needs the width-one law',
                      counterexample={k: algebra.label(v) for k, v in cex.items()})
    carrier = [a for a in range(algebra.n)
               if algebra.neg(algebra.neg(algebra.fa[a])) == algebra.fa[a]]
    regular = [a for a in carrier if algebra.neg(algebra.neg(a)) == a]
    pos = {a: i for i, a in enumerate(carrier)}
    pairs = [(pos[a], pos[b]) for a in carrier for b in carrier
             if algebra.leq(a, b)]
    labels = [algebra.label(a) for a in carrier]
    image = [pos[c] for c in regular]
    collapsed = build_algebra((len(carrier), pairs), image, labels=labels)
    for a in carrier:
        assert collapsed.ex[pos[a]] == pos[algebra.neg(algebra.neg(a))], \
            'existential on the collapse must be double negation'
        assert collapsed.fa[pos[a]] == pos[algebra.fa[a]], \
            'universal quantifier must be inherited'
    for tag in (VarietyTag('HE', 2), VarietyTag('W', 1)):
        ok, cex = membership(collapsed, tag)
        assert ok, (str(tag), cex)
    collapsed.carrier_elements = tuple(carrier)
    return collapsed


@dataclass
class GlivenkoReport:
    collapse: object          # the inner collapse algebra
    hom: HomWitness           # surjection from the algebra onto the collapse
    kernel: tuple             # preimage of the top; equals the dense-forall filter
    quotient: object          # algebra modulo the kernel
    quotient_iso: HomWitness  # isomorphism collapse -> quotient
    semisimple: bool          # maximal congruences of the quotient meet trivially


def glivenko_hom(algebra):
    '''The collapse surjection with its kernel, quotient, and semisimplicity.'''
    collapsed = reg_forall_algebra(algebra)
    carrier = collapsed.carrier_elements
    pos = {a: i for i, a in enumerate(carrier)}

    def g(a):
        return algebra.join(a, algebra.neg(algebra.neg(algebra.fa[a])))

    mapping = []
    for a in range(algebra.n):
        v = g(a)
        assert v in pos, 'collapse map must land in the collapse carrier'
        mapping.append(pos[v])
    hom = HomWitness(algebra, collapsed, tuple(mapping))
    assert hom.surjective, 'collapse map must be onto'

    kernel = tuple(a for a in range(algebra.n)
                   if mapping[a] == pos[algebra.top])
    assert kernel == d_forall_filter(algebra), \
        'kernel must be the dense-forall filter'

    quotient, _ = quotient_by_filter(algebra, kernel)
    iso = find_isomorphism(collapsed, quotient)
    assert iso is not None and iso.is_isomorphism

    # Larger dual point sets give finer congruences, so the maximal proper
    # congruences are the ones attached to minimal nonempty saturated sets.
    congruences = congruence_lattice(quotient)
    nonempty = [c for c in congruences if c.y_points]
    maximal = [c for c in nonempty
               if not any(d is not c and set(d.y_points) < set(c.y_points)
                          for d in nonempty)]
    if maximal:
        meet = maximal[0].partition
        for c in maximal[1:]:
            meet = partition_meet(meet, c.partition)
        semisimple = all(len(b) == 1 for b in meet)
    else:
        semisimple = quotient.n == 1
    return GlivenkoReport(collapsed, hom, kernel, quotient, iso, semisimple)
