'''Combinatorics of finitely generated free algebras in the width-one variety.

The image primes of the free algebra on n generators are labeled functions:
a coordinate vector together with one chain value per generator whose value
set covers the non-image elements and the forced image points.  The cover
relation on labeled functions turns them into a forest; expanding each node by
its trailing part inserts the non-image primes, and the increasing sets of the
expanded space realize the free algebra itself.
'''

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as iproduct
from math import comb

from . import posets
from .chains import ChainCoordinates, build_chain
from .config import DEFAULT_CONFIG
from .core import closure_in_product, generate_subalgebra
from .duality import MGSpace, algebra_from_space, space_order_from_generators, validate_mg_space
from .errors import (BoundExceeded, InvalidCoordinates, InvalidInput,
                     MalformedForest, OutOfRange)


@lru_cache(maxsize=None)
def _chain_for(m, parts):
    return build_chain(ChainCoordinates(m, parts))


@dataclass(frozen=True)
class LabeledFunction:
    '''A generator assignment into the chain with the given coordinates.'''

    m: int
    parts: tuple
    values: tuple   # one chain element index per generator

    @property
    def coords(self):
        return ChainCoordinates(self.m, self.parts)

    @property
    def chain(self):
        return _chain_for(self.m, self.parts)

    def sort_key(self):
        return (self.m, self.parts, self.values)

    def display(self):
        vals = ','.join(f'a{v}' for v in self.values)
        return f'({self.m},({",".join(map(str, self.parts))});{vals})'


def enumerate_im(n, m):
    '''The admissible coordinate parts for rank n at level m, lexicographically.

    A part vector qualifies when its non-image element count plus the number
    of adjacent zero pairs does not exceed the rank.
    '''
    if n < 0:
        raise InvalidInput('rank must be nonnegative', n=n)
    if m < 0 or m > 3 * n:
        raise OutOfRange('level must lie between 0 and 3n', m=m, n=n)
    out = []
    for r in range(m + 1):
        total = m - r
        for parts in _compositions(total, r + 1):
            zero_pairs = sum(1 for j in range(1, r + 1)
                             if parts[j - 1] == 0 and parts[j] == 0)
            if total + zero_pairs <= n:
                out.append(parts)
    return sorted(out)


def _compositions(total, length):
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, length - 1):
            yield (first,) + rest


def required_values(coords):
    '''Chain elements every admissible assignment must reach.

    These are the non-image elements together with the image points squeezed
    between two empty blocks.
    '''
    image = set(coords.image_positions())
    non_image = [i for i in range(coords.size) if i not in image]
    parts = coords.parts
    forced = []
    acc = 0
    for j in range(1, len(parts)):
        acc += parts[j - 1]
        if parts[j - 1] == 0 and parts[j] == 0:
            forced.append(acc + j)
    return tuple(sorted(set(non_image) | set(forced)))


def enumerate_functions(n, coords):
    '''All admissible generator assignments into the coordinate chain.'''
    if coords.parts not in enumerate_im(n, coords.m):
        raise InvalidCoordinates('parts not admissible at this rank',
                                 m=coords.m, parts=coords.parts, n=n)
    required = set(required_values(coords))
    out = []
    for values in iproduct(range(coords.size), repeat=n):
        if required <= set(values):
            out.append(LabeledFunction(coords.m, coords.parts, values))
    return out


def covers(lower, upper):
    '''Whether upper covers lower in the image prime forest.

    The upper function appends one block of size t to the lower coordinates;
    generators sitting at or below the old level must keep their value, and
    generators at the old top must move to the new block or its top.
    '''
    t = upper.parts[-1]
    if upper.m != lower.m + t + 1 or upper.parts[:-1] != lower.parts:
        return False
    for lv, uv in zip(lower.values, upper.values):
        if uv <= lower.m:
            if lv != uv:
                return False
        else:
            if lv != lower.m + 1:
                return False
    return True


def surjection_count(n, k):
    '''Number of surjections from an n-set onto a k-set.'''
    return sum((-1) ** i * comb(k, i) * (k - i) ** n for i in range(k + 1))


assert surjection_count(0, 0) == 1 and surjection_count(3, 0) == 0
assert surjection_count(4, 2) == 14


@dataclass
class ExistsPiForest:
    '''The forest of image primes of the free algebra of the given rank.'''

    rank: int
    nodes: tuple          # LabeledFunction, canonically sorted
    parent: tuple         # index of the unique lower cover, or -1
    up: tuple             # up[i] = bitmask of nodes above node i (inclusive)
    minimal: tuple        # indices without a lower cover
    maximal: tuple        # indices without an upper cover

    def node_index(self):
        return {f: i for i, f in enumerate(self.nodes)}


def build_exists_pi(n, config=None):
    '''Enumerate the image primes and their cover forest for rank n.'''
    cfg = config or DEFAULT_CONFIG
    if n < 0:
        raise InvalidInput('rank must be nonnegative', n=n)
    cap = 3 if cfg.allow_rank_3 else cfg.free_rank_cap
    if n > cap:
        raise BoundExceeded('rank beyond the supported presentation bound',
                            n=n, cap=cap)

    nodes = []
    for m in range(3 * n + 1):
        for parts in enumerate_im(n, m):
            nodes.extend(enumerate_functions(n, ChainCoordinates(m, parts)))
    nodes.sort(key=LabeledFunction.sort_key)

    k = len(nodes)
    parent = [-1] * k
    children = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j and covers(nodes[i], nodes[j]):
                if parent[j] != -1:
                    raise MalformedForest(
                        'node has two lower covers',
                        node=nodes[j].display(),
                        covers=(nodes[parent[j]].display(), nodes[i].display()))
                parent[j] = i
                children[i].append(j)

    up = [1 << i for i in range(k)]
    order = sorted(range(k), key=lambda i: -nodes[i].m)
    for i in order:
        for c in children[i]:
            up[i] |= up[c]

    minimal = tuple(i for i in range(k) if parent[i] == -1)
    assert set(minimal) == {i for i in range(k) if len(nodes[i].parts) == 1}, \
        'minimal nodes must be exactly the single-block ones'
    for i in minimal:
        assert nodes[i].parts == (nodes[i].m,)

    maximal = tuple(i for i in range(k) if not children[i])
    for i in range(k):
        f = nodes[i]
        top_reachable = any(f.chain.ex[v] == f.chain.top for v in f.values)
        assert (i not in maximal) == top_reachable, \
            'maximality must match the top-avoidance criterion'

    for i in range(k):
        depth = 1
        j = i
        while parent[j] != -1:
            j = parent[j]
            depth += 1
        assert depth == len(nodes[i].parts), \
            'forest depth must equal the number of blocks'

    return ExistsPiForest(n, tuple(nodes), tuple(parent), tuple(up),
                          minimal, maximal)


@dataclass
class FreePresentation:
    '''The expanded prime forest of the free algebra, with its dual space.'''

    rank: int
    forest: ExistsPiForest
    labels: tuple          # display name per point
    parent: tuple          # unique lower cover per point, or -1
    up: tuple              # prime-order up masks (descendants, inclusive)
    node_of_point: tuple   # forest node index, or -1 for inserted points
    point_of_node: tuple   # point index of each forest node
    classes: tuple         # each node with its inserted points
    space: MGSpace         # the same data in filter-inclusion orientation
    generator_masks: tuple # one point mask per generator

    @property
    def n_points(self):
        return len(self.labels)


def expand_to_pi(forest):
    '''Insert the non-image primes below each node and build the dual space.

    A node with trailing part t gains t new points directly below it (its
    whole level when minimal); the node and its inserted points form one
    equivalence class.
    '''
    labels = []
    parent = []
    node_of_point = []
    point_of_node = [-1] * len(forest.nodes)
    classes = []

    for i, f in enumerate(forest.nodes):
        t = f.parts[-1]
        below = forest.parent[i]
        if below == -1:
            attach = -1
        else:
            attach = point_of_node[below]
            if attach == -1:
                raise MalformedForest('parent node expanded after its child',
                                      node=f.display())
        cls = []
        prev = attach
        for s in range(t):
            labels.append(f'{f.display()}+{s + 1}')
            parent.append(prev)
            node_of_point.append(-1)
            prev = len(labels) - 1
            cls.append(prev)
        labels.append(f.display())
        parent.append(prev)
        node_of_point.append(i)
        point_of_node[i] = len(labels) - 1
        cls.append(point_of_node[i])
        classes.append(tuple(sorted(cls)))

    k = len(labels)
    children = [[] for _ in range(k)]
    for x in range(k):
        if parent[x] != -1:
            children[parent[x]].append(x)
    up = [1 << x for x in range(k)]
    depth = [0] * k
    for x in range(k):
        d, j = 0, x
        while parent[j] != -1:
            j = parent[j]
            d += 1
        depth[x] = d
    for x in sorted(range(k), key=lambda x: -depth[x]):
        for c in children[x]:
            up[x] |= up[c]

    def pi_leq(a, b):
        return (up[a] >> b) & 1 == 1

    space_up = space_order_from_generators(tuple(range(k)), pi_leq)
    space = MGSpace(k, space_up, tuple(sorted(classes)), tuple(labels))

    maximal_mask = 0
    for i in forest.maximal:
        maximal_mask |= 1 << point_of_node[i]

    generator_masks = []
    for g in range(forest.rank):
        mask = 0
        for x in range(k):
            position = depth[x] + 1
            verdicts = set()
            for mpt in posets.bits(up[x] & maximal_mask):
                node = forest.nodes[node_of_point[mpt]]
                verdicts.add(node.values[g] >= position)
            if len(verdicts) != 1:
                raise MalformedForest(
                    'maximal nodes disagree about generator membership',
                    point=labels[x], generator=g)
            if verdicts.pop():
                mask |= 1 << x
        for x in posets.bits(mask):
            if parent[x] != -1:
                assert (mask >> parent[x]) & 1, \
                    'generator point sets must be downward closed'
        generator_masks.append(mask)

    return FreePresentation(forest.rank, forest, tuple(labels), tuple(parent),
                            tuple(up), tuple(node_of_point),
                            tuple(point_of_node), tuple(sorted(classes)),
                            space, tuple(generator_masks))


def _downset_count(parent, k):
    children = [[] for _ in range(k)]
    roots = []
    for x in range(k):
        if parent[x] == -1:
            roots.append(x)
        else:
            children[parent[x]].append(x)

    def tree_count(x):
        prod = 1
        for c in children[x]:
            prod *= tree_count(c)
        return 1 + prod

    total = 1
    for r in roots:
        total *= tree_count(r)
    return total


@dataclass
class FreeAlgebra:
    '''The free algebra of the given rank, materialized when small enough.

    Elements are the downward closed point sets of the presentation; when the
    carrier is too large only the presentation and mask operations are kept.
    '''

    rank: int
    presentation: FreePresentation
    size: int
    algebra: object        # FiniteMGAlgebra or None
    generator_indices: tuple  # element indices when materialized, else None

    # -- operations on downward closed point masks -------------------------
    def full_mask(self):
        return (1 << self.presentation.n_points) - 1

    def is_element(self, mask):
        pres = self.presentation
        return all(pres.parent[x] == -1 or (mask >> pres.parent[x]) & 1
                   for x in posets.bits(mask))

    def mask_meet(self, a, b):
        return a & b

    def mask_join(self, a, b):
        return a | b

    def mask_imp(self, a, b):
        pres = self.presentation
        bad = a & ~b
        shadow = 0
        for x in posets.bits(bad):
            shadow |= pres.up[x]
        return self.full_mask() & ~shadow

    def mask_exists(self, a):
        out = 0
        for cls in self.presentation.classes:
            cm = 0
            for x in cls:
                cm |= 1 << x
            if cm & a:
                out |= cm
        return out

    def mask_forall(self, a):
        out = 0
        for cls in self.presentation.classes:
            cm = 0
            for x in cls:
                cm |= 1 << x
            if cm & ~a == 0:
                out |= cm
        return out


def free_algebra(n, config=None):
    '''Build the free algebra presentation of rank n; materialize if small.'''
    cfg = config or DEFAULT_CONFIG
    forest = build_exists_pi(n, config=cfg)
    pres = expand_to_pi(forest)

    report = validate_mg_space(pres.space, config=cfg, allow_partial=True)
    assert report.ok, report.violations

    size = _downset_count(pres.parent, pres.n_points)
    algebra = None
    generator_indices = None
    if size <= cfg.materialize_cap:
        algebra = algebra_from_space(pres.space, config=cfg)
        index = {m: i for i, m in enumerate(algebra.element_masks)}
        generator_indices = tuple(index[g] for g in pres.generator_masks)
        assert algebra.n == size
    free = FreeAlgebra(n, pres, size, algebra, generator_indices)
    for g in pres.generator_masks:
        assert free.is_element(g)
    return free


# -- the count report --------------------------------------------------------

def count_checks(n, config=None):
    '''Counting evidence for the rank-n presentation.

    Returns a report with the prime counts, the minimal-node breakdown against
    the surjection formula, the maximality criterion, and the product claim
    for the simple collapse (checked on the full product for rank at most 1,
    through all binary projections otherwise).
    '''
    cfg = config or DEFAULT_CONFIG
    forest = build_exists_pi(n, config=cfg)
    pres = expand_to_pi(forest)
    report = {
        'rank': n,
        'exists_pi_count': len(forest.nodes),
        'pi_count': pres.n_points,
        'free_size': _downset_count(pres.parent, pres.n_points),
    }

    min_by_m = {}
    for i in forest.minimal:
        min_by_m[forest.nodes[i].m] = min_by_m.get(forest.nodes[i].m, 0) + 1
    formula = {m: surjection_count(n, m) + 2 * surjection_count(n, m + 1)
               + surjection_count(n, m + 2) for m in range(n + 1)}
    report['min_count'] = len(forest.minimal)
    report['min_by_m'] = dict(sorted(min_by_m.items()))
    report['stirling_by_m'] = formula
    report['stirling_ok'] = min_by_m == {m: v for m, v in formula.items() if v}

    criterion = {i for i in range(len(forest.nodes))
                 if not any(forest.nodes[i].chain.ex[v] == forest.nodes[i].chain.top
                            for v in forest.nodes[i].values)}
    report['maximality_ok'] = criterion == set(forest.maximal)

    factors = [forest.nodes[i] for i in forest.minimal]
    chains = [f.chain for f in factors]
    gens = [tuple(f.values[g] for f in factors) for g in range(n)]
    if len(chains) <= 3:
        closure = closure_in_product(chains, gens)
        full = 1
        for c in chains:
            full *= c.n
        report['product_claim'] = {
            'factors': [f.display() for f in factors],
            'method': 'full closure',
            'full': len(closure) == full,
        }
    else:
        # With a majority term around, a subalgebra of a finite product is
        # determined by its binary projections, so the diagonal generates the
        # whole product as soon as every pair of coordinates is covered.
        ok = True
        for i in range(len(chains)):
            single = closure_in_product([chains[i]], [(g[i],) for g in gens])
            if len(single) != chains[i].n:
                ok = False
        for i, j in combinations(range(len(chains)), 2):
            pair_gens = [(g[i], g[j]) for g in gens]
            closure = closure_in_product([chains[i], chains[j]], pair_gens)
            if len(closure) != chains[i].n * chains[j].n:
                ok = False
        report['product_claim'] = {
            'factors': [f.display() for f in factors],
            'method': 'binary projections',
            'full': ok,
        }
    return report


# -- structural cross-checks -------------------------------------------------

def generation_criterion_agrees(n, max_m):
    '''The value-set criterion matches subalgebra generation on small chains.'''
    for m in range(max_m + 1):
        for r in range(m + 1):
            for parts in _compositions(m - r, r + 1):
                coords = ChainCoordinates(m, parts)
                chain = build_chain(coords)
                required = set(required_values(coords))
                for values in iproduct(range(coords.size), repeat=n):
                    generated = generate_subalgebra(chain, values)
                    full = len(generated) == chain.n
                    if full != (required <= set(values)):
                        return False, (coords, values)
    return True, None


def separation_fixpoint(pres):
    '''Refine point blocks until generator-definable structure stabilizes.

    Starts from generator membership patterns and refines by the blocks met by
    principal chains and by equivalence classes.  A block that never splits
    witnesses a proper closed subuniverse, so an all-singleton fixpoint is the
    expected outcome for a free presentation.
    '''
    k = pres.n_points
    cls_of = [0] * k
    for ci, cls in enumerate(pres.classes):
        for x in cls:
            cls_of[x] = ci

    block = {}
    assign = []
    for x in range(k):
        pattern = tuple((pres.generator_masks[g] >> x) & 1
                        for g in range(pres.rank))
        assign.append(pattern)
    rounds = 0
    while True:
        ids = {s: i for i, s in enumerate(sorted(set(assign)))}
        current = [ids[s] for s in assign]
        nxt = []
        for x in range(k):
            chain_blocks = set()
            j = x
            while j != -1:
                chain_blocks.add(current[j])
                j = pres.parent[j]
            class_blocks = {current[y] for y in pres.classes[cls_of[x]]}
            nxt.append((current[x], tuple(sorted(chain_blocks)),
                        tuple(sorted(class_blocks))))
        rounds += 1
        if len(set(nxt)) == len(set(assign)):
            return current, rounds
        assign = nxt


def segment_isomorphism_report(forest):
    '''Check the shifted-segment description of covers of minimal nodes.

    Every cover h of a minimal node f lowers to a minimal node of a smaller
    rank presentation whose upper segment is order isomorphic to the one
    above h.
    '''
    nodes = forest.nodes
    index = forest.node_index()
    results = []
    for i in forest.minimal:
        f = nodes[i]
        m = f.m
        j_count = sum(1 for v in f.values if v == m + 1)
        cover_idxs = [c for c in range(len(nodes))
                      if forest.parent[c] == i]
        expected_shapes = {(mp, (m, mp - m - 1))
                           for mp in range(m + 1, m + j_count + 2)}
        got_shapes = {(nodes[c].m, nodes[c].parts) for c in cover_idxs}
        shapes_ok = got_shapes <= expected_shapes
        iso_ok = True
        for c in cover_idxs:
            h = nodes[c]
            mp = h.m
            reduced_values = []
            for v in h.values:
                if v <= m:
                    reduced_values.append(0)
                else:
                    reduced_values.append(v - (m + 1))
            f1 = LabeledFunction(mp - m - 1, (mp - m - 1,),
                                 tuple(reduced_values))
            if f1 not in index:
                iso_ok = False
                continue
            seg_h = sorted(posets.bits(forest.up[c]))
            seg_f1 = sorted(posets.bits(forest.up[index[f1]]))
            if len(seg_h) != len(seg_f1):
                iso_ok = False
                continue
            pos_h = {p: t for t, p in enumerate(seg_h)}
            pos_f1 = {p: t for t, p in enumerate(seg_f1)}
            up_h = tuple(
                _restrict_mask(forest.up[p], seg_h, pos_h) for p in seg_h)
            up_f1 = tuple(
                _restrict_mask(forest.up[p], seg_f1, pos_f1) for p in seg_f1)
            found = next(posets.poset_isomorphisms(
                len(seg_h), up_h, len(seg_f1), up_f1), None)
            if found is None:
                iso_ok = False
        results.append({'node': f.display(), 'covers': len(cover_idxs),
                        'shapes_ok': shapes_ok, 'segments_ok': iso_ok})
    return results


def _restrict_mask(mask, members, position):
    out = 0
    for p in members:
        if (mask >> p) & 1:
            out |= 1 << position[p]
    return out
