'''Canonical JSON interchange for algebras and dual spaces.

Only the order relation and the quantifier image (or the class partition) are
stored; operation tables are recomputed on load.  Documents are emitted with
sorted keys and a fixed layout so identical objects serialize byte for byte.
'''

import json

from .core import FiniteMGAlgebra, build_algebra
from .duality import MGSpace, validate_mg_space
from .errors import InvalidInput


def _closed_pairs(size, pairs):
    leq = [[False] * size for _ in range(size)]
    for entry in pairs:
        try:
            i, j = entry
        except (TypeError, ValueError):
            raise InvalidInput('leq entries must be pairs', entry=entry)
        if not (isinstance(i, int) and isinstance(j, int)
                and 0 <= i < size and 0 <= j < size):
            raise InvalidInput('leq pair out of range', pair=[i, j], size=size)
        leq[i][j] = True
    for i in range(size):
        leq[i][i] = True
    for k in range(size):
        for i in range(size):
            if leq[i][k]:
                row_k = leq[k]
                row_i = leq[i]
                for j in range(size):
                    if row_k[j]:
                        row_i[j] = True
    return [(i, j) for i in range(size) for j in range(size) if leq[i][j]]


def _read_common(doc):
    if not isinstance(doc, dict):
        raise InvalidInput('document must be a JSON object')
    size = doc.get('size')
    if not isinstance(size, int) or size < 1:
        raise InvalidInput('size must be a positive integer', size=size)
    pairs = doc.get('leq')
    if not isinstance(pairs, list):
        raise InvalidInput('leq must be a list of pairs')
    labels = doc.get('labels')
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != size
                or not all(isinstance(s, str) for s in labels)):
            raise InvalidInput('labels must list one string per element')
    return size, _closed_pairs(size, pairs), labels


def algebra_to_dict(algebra):
    '''Canonical dictionary form of an algebra.'''
    n = algebra.n
    return {
        'size': n,
        'leq': [[a, b] for a in range(n) for b in range(n)
                if algebra.leq(a, b)],
        'exists_image': sorted(algebra.exists_image),
        'labels': [algebra.label(a) for a in range(n)],
    }


def algebra_from_dict(doc, config=None):
    size, pairs, labels = _read_common(doc)
    image = doc.get('exists_image')
    if (not isinstance(image, list)
            or not all(isinstance(c, int) and 0 <= c < size for c in image)):
        raise InvalidInput('exists_image must list element indices',
                           exists_image=image)
    return build_algebra((size, pairs), sorted(set(image)), labels=labels,
                         config=config)


def space_to_dict(space):
    '''Canonical dictionary form of a dual space.'''
    n = space.n
    return {
        'size': n,
        'leq': [[a, b] for a in range(n) for b in range(n)
                if (space.up[a] >> b) & 1],
        'classes': sorted(sorted(cls) for cls in space.classes),
        'labels': [space.label(x) for x in range(n)],
    }


def space_from_dict(doc, config=None, validate=True):
    size, pairs, labels = _read_common(doc)
    classes = doc.get('classes')
    if not isinstance(classes, list):
        raise InvalidInput('classes must be a list of point lists')
    seen = set()
    norm = []
    for cls in classes:
        if (not isinstance(cls, list) or not cls
                or not all(isinstance(x, int) and 0 <= x < size for x in cls)):
            raise InvalidInput('each class must list point indices', cls=cls)
        if seen & set(cls):
            raise InvalidInput('classes must be disjoint', cls=cls)
        seen |= set(cls)
        norm.append(tuple(sorted(cls)))
    if seen != set(range(size)):
        raise InvalidInput('classes must cover every point')
    up = [0] * size
    for a, b in pairs:
        up[a] |= 1 << b
    space = MGSpace(size, tuple(up), tuple(sorted(norm)),
                    tuple(labels) if labels else
                    tuple(f'p{x}' for x in range(size)))
    if validate:
        report = validate_mg_space(space, config=config, allow_partial=True)
        if not report.ok:
            raise InvalidInput('document does not describe a valid space',
                               violations=report.violations[:3])
    return space


def dumps(obj):
    '''Deterministic JSON text.'''
    return json.dumps(obj, indent=2, sort_keys=True) + '\n'


def save_algebra(algebra, path):
    with open(path, 'w') as fh:
        fh.write(dumps(algebra_to_dict(algebra)))


def load_algebra(path, config=None):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput('file is not valid JSON', reason=str(exc))
    return algebra_from_dict(doc, config=config)


def save_space(space, path):
    with open(path, 'w') as fh:
        fh.write(dumps(space_to_dict(space)))


def load_space(path, config=None, validate=True):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput('file is not valid JSON', reason=str(exc))
    return space_from_dict(doc, config=config, validate=validate)


def guess_kind(doc):
    '''Whether a parsed document describes an algebra or a space.'''
    if isinstance(doc, dict) and 'exists_image' in doc:
        return 'algebra'
    if isinstance(doc, dict) and 'classes' in doc:
        return 'space'
    raise InvalidInput('document has neither exists_image nor classes')


def _roundtrip_check():
    a = build_algebra((3, [(0, 1), (1, 2)]), [0, 2])
    doc = algebra_to_dict(a)
    again = algebra_from_dict(json.loads(dumps(doc)))
    assert algebra_to_dict(again) == doc
    cover_only = {'size': 3, 'leq': [[0, 1], [1, 2]], 'exists_image': [0, 2]}
    assert algebra_to_dict(algebra_from_dict(cover_only)) == doc


_roundtrip_check()
