'''Named verification suites over the constructions in this package.

Each criterion runs a deterministic check battery and reports one line; the
paper suite runs all of them.  Reports carry no timing or environment data so
repeat runs produce byte-identical output at any parallelism setting.
'''

from dataclasses import dataclass

from . import dot, free, glivenko, terms, varieties
from .chains import (ChainCoordinates, all_coordinates, build_chain,
                     char_chain_embedding, non_local_finite_witness)
from .config import DEFAULT_CONFIG
from .core import (algebra_on_tuples, classify, closure_in_product,
                   enumerate_algebras, exists_reduct, find_isomorphism)
from .duality import (algebra_from_space, brute_force_congruence_count,
                      congruence_lattice, dual_space,
                      enumerate_interior_operators, interior_conditions,
                      space_isomorphism, validate_mg_space)
from .lattices import FiniteLattice, lattice_of_upsets
from .posets import canonical_key, enumerate_posets


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


_CORPUS = {}


def corpus(max_size, config=None):
    if max_size not in _CORPUS:
        _CORPUS[max_size] = enumerate_algebras(
            max_size, config=(config or DEFAULT_CONFIG).with_overrides(
                enumeration_cap=max_size))
    return _CORPUS[max_size]


RANK1_FUNCTIONS = (
    '(0,(0);a0)', '(0,(0);a1)', '(1,(0,0);a1)', '(1,(1);a1)',
    '(2,(0,1);a2)', '(2,(1,0);a1)', '(3,(0,1,0);a2)',
)

RANK1_PARTS = {
    0: [(0,)],
    1: [(0, 0), (1,)],
    2: [(0, 1), (1, 0)],
    3: [(0, 1, 0)],
}


def criterion_free_counts(config=None):
    '''Image-prime counts of the rank 1 and rank 2 presentations.'''
    f1 = free.build_exists_pi(1, config=config)
    got1 = tuple(nd.display() for nd in f1.nodes)
    f2 = free.build_exists_pi(2, config=config)
    p2 = free.expand_to_pi(f2)
    ok = (got1 == RANK1_FUNCTIONS and len(f2.nodes) == 71
          and p2.n_points == 101)
    return CheckResult(
        'free-counts', ok,
        f'existsPi(1)={len(f1.nodes)} (functions '
        f'{"match" if got1 == RANK1_FUNCTIONS else "differ"}), '
        f'existsPi(2)={len(f2.nodes)}, pi(2)={p2.n_points}')


def criterion_minimal_counts(config=None):
    '''Minimal node counts against the surjection-count formula.'''
    r1 = free.count_checks(1, config=config)
    r2 = free.count_checks(2, config=config)
    ok = (r1['min_count'] == 3 and r2['min_count'] == 11
          and r2['min_by_m'] == {0: 4, 1: 5, 2: 2}
          and r1['stirling_ok'] and r2['stirling_ok'])
    return CheckResult(
        'minimal-counts', ok,
        f'min(1)={r1["min_count"]}, min(2)={r2["min_count"]} '
        f'by level {r2["min_by_m"]}, formula '
        f'{"agrees" if r1["stirling_ok"] and r2["stirling_ok"] else "differs"}')


def criterion_admissible_parts(config=None):
    '''Admissible coordinate parts at rank 1, level by level.'''
    got = {m: free.enumerate_im(1, m) for m in range(4)}
    ok = all(sorted(got[m]) == sorted(RANK1_PARTS[m]) for m in range(4))
    return CheckResult('admissible-parts', ok,
                       '; '.join(f'I_{m}(1)={got[m]}' for m in range(4)))


def criterion_free_oracle(config=None):
    '''Rank 1 freeness oracle: diagonal closure in the prime chain product.'''
    forest = free.build_exists_pi(1, config=config)
    chains = [nd.chain for nd in forest.nodes]
    diag = tuple(nd.values[0] for nd in forest.nodes)
    closure = closure_in_product(chains, [diag])
    oracle = algebra_on_tuples(chains, closure)
    built = free.free_algebra(1, config=config)
    iso = find_isomorphism(oracle, built.algebra)
    gen_ok = (iso is not None
              and iso.mapping[oracle.element_tuples.index(diag)]
              == built.generator_indices[0])
    ok = len(closure) == 72 and built.size == 72 and gen_ok
    return CheckResult(
        'free-oracle', ok,
        f'closure={len(closure)}, built={built.size}, '
        f'isomorphic={iso is not None}, generator preserved={gen_ok}')


def criterion_identities(max_m=5, max_size=6, config=None):
    '''Axioms, prelinearity, and the fourteen laws across the corpus.'''
    cfg = config or DEFAULT_CONFIG
    names = ['M1', 'M2', 'M3', 'M4', 'M5', 'prelinearity'] + list(terms.LAW_NAMES)
    chains = [build_chain(c) for c in all_coordinates(max_m)]
    algebras = chains + list(corpus(max_size, cfg))
    failures = []
    for a in algebras:
        for name in names:
            cex = terms.check_identity(a, terms.catalog(name),
                                       parallelism=cfg.parallelism)
            if cex is not None:
                failures.append((name, cex))
    alpha = terms.alpha_identity(1)
    for c in chains:
        cex = terms.check_identity(c, alpha)
        if cex is not None:
            failures.append(('alpha_1', cex))
    return CheckResult(
        'identities', not failures,
        f'{len(algebras)} algebras ({len(chains)} chains), '
        f'{len(names)} schemas, {len(failures)} counterexamples')


def criterion_width(max_size=7, config=None):
    '''Three width computations agree on every f.s.i. corpus algebra.'''
    checked = 0
    mismatches = []
    for a in corpus(max_size, config):
        if not classify(a).fsi:
            continue
        checked += 1
        try:
            varieties.width_of(a)
        except AssertionError as exc:
            mismatches.append(str(exc))
    return CheckResult('width', not mismatches,
                       f'{checked} f.s.i. algebras of size <= {max_size}, '
                       f'{len(mismatches)} mismatches')


def criterion_duality(max_size=7, space_cap=10, config=None):
    '''Algebra and space round trips through the duality.'''
    algebra_fail = space_fail = algebras = spaces = 0
    for a in corpus(max_size, config):
        s = dual_space(a)
        b = algebra_from_space(s, config=config)
        algebras += 1
        if find_isomorphism(a, b) is None:
            algebra_fail += 1
        if s.n <= space_cap:
            spaces += 1
            if space_isomorphism(dual_space(b), s) is None:
                space_fail += 1
    pres = free.free_algebra(1, config=config).presentation
    spaces += 1
    again = dual_space(algebra_from_space(pres.space, config=config))
    if space_isomorphism(again, pres.space) is None:
        space_fail += 1
    ok = algebra_fail == 0 and space_fail == 0
    return CheckResult('duality', ok,
                       f'{algebras} algebra round trips, {spaces} space '
                       f'round trips, {algebra_fail + space_fail} failures')


def criterion_congruences(max_size=6, config=None):
    '''Saturated increasing sets, congruences, and reduct congruences agree.'''
    mismatches = 0
    checked = 0
    for a in corpus(max_size, config):
        checked += 1
        by_space = len(congruence_lattice(a))
        direct = brute_force_congruence_count(a, include_quantifiers=True)
        reduct = brute_force_congruence_count(exists_reduct(a),
                                              include_quantifiers=False)
        if not (by_space == direct == reduct):
            mismatches += 1
    return CheckResult('congruences', mismatches == 0,
                       f'{checked} algebras, {mismatches} count mismatches')


def criterion_varieties(max_size=6, max_param=4, config=None):
    '''Equational subvariety membership matches the dual-space criteria.'''
    mismatches = 0
    checked = 0
    tags = [varieties.VarietyTag('W', k) for k in range(1, max_param + 1)]
    tags += [varieties.VarietyTag('H', n) for n in range(2, max_param + 1)]
    tags += [varieties.VarietyTag('HE', n) for n in range(2, max_param + 1)]
    for a in corpus(max_size, config):
        for tag in tags:
            checked += 1
            eq, _ = varieties.membership(a, tag)
            if eq != varieties.dual_membership(a, tag):
                mismatches += 1
    return CheckResult('varieties', mismatches == 0,
                       f'{checked} membership comparisons, '
                       f'{mismatches} mismatches')


def distributive_lattices(max_size=5):
    '''All bounded distributive lattices up to the given size, to isomorphism.'''
    out = []
    seen = set()
    for n_pts, up in enumerate_posets(max_size - 1, max_size):
        lat, _ = lattice_of_upsets(n_pts, up)
        if lat.n > max_size:
            continue
        lat_up = tuple(sum(1 << b for b in range(lat.n) if lat.leq(a, b))
                       for a in range(lat.n))
        key = canonical_key(lat.n, lat_up)
        if key in seen:
            continue
        seen.add(key)
        out.append(lat)
    return out


def criterion_interior(max_size=5, config=None):
    '''The four interior-operator conditions agree on small lattices.'''
    lattices = distributive_lattices(max_size)
    operators = 0
    mismatches = 0
    for lat in lattices:
        for f in enumerate_interior_operators(lat):
            operators += 1
            conds = interior_conditions(lat, f)
            if len(set(conds)) != 1:
                mismatches += 1
    return CheckResult('interior', mismatches == 0,
                       f'{len(lattices)} lattices, {operators} interior '
                       f'operators, {mismatches} disagreements')


def criterion_glivenko(max_size=6, config=None):
    '''The regular-collapse homomorphism behaves on every width-one algebra.'''
    checked = 0
    failures = 0
    w1 = varieties.VarietyTag('W', 1)
    for a in corpus(max_size, config):
        holds, _ = varieties.membership(a, w1)
        if not holds:
            continue
        checked += 1
        try:
            report = glivenko.glivenko_hom(a)
            if not (report.hom.surjective and report.semisimple
                    and report.quotient_iso is not None):
                failures += 1
        except AssertionError:
            failures += 1
    return CheckResult('glivenko', failures == 0,
                       f'{checked} width-one algebras, {failures} failures')


def criterion_discriminator(max_size=6, config=None):
    '''The candidate term discriminates exactly on the simple algebras.'''
    simple_checked = 0
    failures = 0
    for a in corpus(max_size, config):
        if not classify(a).simple:
            continue
        simple_checked += 1
        realized, _ = varieties.discriminator_check(a)
        if not realized:
            failures += 1
    witness = build_chain(ChainCoordinates(1, (0, 0)))
    assert classify(witness).fsi and not classify(witness).simple
    realized, triple = varieties.discriminator_check(witness)
    if realized:
        failures += 1
    return CheckResult(
        'discriminator', failures == 0,
        f'{simple_checked} simple algebras pass; non-simple witness '
        f'fails at {triple}')


def criterion_char_chain(max_m=4, config=None):
    '''Characteristic-chain surjections exist for every coordinate vector.'''
    checked = 0
    failures = 0
    for coords in all_coordinates(max_m):
        checked += 1
        try:
            emb = char_chain_embedding(coords)
            if not emb.witness.surjective:
                failures += 1
        except AssertionError:
            failures += 1
    return CheckResult('char-chain', failures == 0,
                       f'{checked} coordinate vectors, {failures} failures')


def criterion_witness(k=10, truncation=12, config=None):
    '''The non-local-finiteness vectors are distinct and match the formula.'''
    vectors = non_local_finite_witness(k, truncation)
    ok = len(vectors) == k and len(set(vectors)) == k
    return CheckResult('witness', ok,
                       f'{len(set(vectors))} distinct vectors at k={k}, '
                       f'T={truncation}')


SUITES = {
    'free': (criterion_free_counts, criterion_minimal_counts,
             criterion_admissible_parts, criterion_free_oracle),
    'identities': (criterion_identities,),
    'width': (criterion_width,),
    'duality': (criterion_duality,),
    'congruences': (criterion_congruences,),
    'varieties': (criterion_varieties,),
    'interior': (criterion_interior,),
    'glivenko': (criterion_glivenko,),
    'discriminator': (criterion_discriminator,),
    'chain': (criterion_char_chain,),
    'witness': (criterion_witness,),
}

_SIZED = {criterion_identities, criterion_width, criterion_duality,
          criterion_congruences, criterion_varieties, criterion_glivenko,
          criterion_discriminator}


def suite_names():
    return tuple(SUITES) + ('paper',)


def run_suite(name, config=None, max_size=None):
    '''Run one named suite; the paper suite runs everything in order.'''
    if name == 'paper':
        selected = [fn for fns in SUITES.values() for fn in fns]
    elif name in SUITES:
        selected = list(SUITES[name])
    else:
        from .errors import UnknownName
        raise UnknownName('no such suite', name=name,
                          available=sorted(suite_names()))
    results = []
    for fn in selected:
        if max_size is not None and fn in _SIZED:
            results.append(fn(max_size=max_size, config=config))
        else:
            results.append(fn(config=config))
    return results


def render_report(results):
    '''Stable text report, one line per criterion.'''
    lines = []
    for r in results:
        lines.append(f'{"PASS" if r.ok else "FAIL"}  {r.name}: {r.detail}')
    failed = sum(1 for r in results if not r.ok)
    lines.append(f'{len(results) - failed}/{len(results)} criteria passed')
    return '\n'.join(lines) + '\n'


def report_dict(results):
    return {
        'results': [{'name': r.name, 'ok': r.ok, 'detail': r.detail}
                    for r in results],
        'ok': all(r.ok for r in results),
    }
