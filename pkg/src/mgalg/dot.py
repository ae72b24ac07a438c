'''Hasse diagram DOT output for algebras and dual spaces.

Output is deterministic: nodes appear in index order, edges sorted, and class
colors are assigned by class position.  DOT is write-only; nothing here parses
it back.
'''

from . import posets
from .errors import TooLarge

MAX_POINTS = 500

_CLASS_COLORS = (
    '#a6cee3', '#b2df8a', '#fb9a99', '#fdbf6f', '#cab2d9',
    '#ffff99', '#1f78b4', '#33a02c', '#e31a1c', '#ff7f00',
)


def _quote(text):
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _cover_edges(n, up):
    down = [0] * n
    for a in range(n):
        for b in posets.bits(up[a]):
            down[b] |= 1 << a
    edges = []
    for a in range(n):
        strict = up[a] & ~(1 << a)
        for b in posets.bits(strict):
            if not (strict & down[b] & ~(1 << b)):
                edges.append((a, b))
    return sorted(edges)


def algebra_dot(algebra, name='algebra'):
    '''Hasse diagram of the algebra order; image elements are double circled.'''
    if algebra.n > MAX_POINTS:
        raise TooLarge('too many elements for DOT output',
                       size=algebra.n, cap=MAX_POINTS)
    image = set(algebra.exists_image)
    lines = [f'digraph {name} {{', '  rankdir=BT;',
             '  node [shape=ellipse];']
    for a in range(algebra.n):
        attrs = [f'label={_quote(algebra.label(a))}']
        if a in image:
            attrs.append('peripheries=2')
        lines.append(f'  n{a} [{", ".join(attrs)}];')
    up = [0] * algebra.n
    for a in range(algebra.n):
        for b in range(algebra.n):
            if algebra.leq(a, b):
                up[a] |= 1 << b
    for a, b in _cover_edges(algebra.n, up):
        lines.append(f'  n{a} -> n{b} [arrowhead=none];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def space_dot(space, generator_masks=(), name='space'):
    '''Hasse diagram of a dual space in prime order.

    Classes are colored clusters, the points carrying the image structure
    (those whose class lies inside their prime-order down-set) are double
    circled, and membership in generator down-sets is marked by dashed
    borders with the generators listed on the label.
    '''
    if space.n > MAX_POINTS:
        raise TooLarge('too many points for DOT output',
                       size=space.n, cap=MAX_POINTS)
    n = space.n
    # space order stores filter inclusion; the drawing uses the prime order,
    # which runs the other way
    pi_up = [0] * n
    for x in range(n):
        for y in posets.bits(space.up[x]):
            pi_up[y] |= 1 << x
    idx = space.class_index()
    image_points = set()
    for x in range(n):
        cls = space.classes[idx[x]]
        if all((space.up[x] >> y) & 1 for y in cls):
            image_points.add(x)

    lines = [f'digraph {name} {{', '  rankdir=BT;',
             '  node [shape=ellipse, style=filled];']
    for ci, cls in enumerate(space.classes):
        color = _CLASS_COLORS[ci % len(_CLASS_COLORS)]
        lines.append(f'  subgraph cluster_{ci} {{')
        lines.append('    color="#999999";')
        for x in cls:
            attrs = [f'label={_quote(_point_label(space, generator_masks, x))}',
                     f'fillcolor="{color}"']
            if x in image_points:
                attrs.append('peripheries=2')
            if any((mask >> x) & 1 for mask in generator_masks):
                attrs.append('style="filled,dashed"')
            lines.append(f'    n{x} [{", ".join(attrs)}];')
        lines.append('  }')
    for a, b in _cover_edges(n, tuple(pi_up)):
        lines.append(f'  n{a} -> n{b} [arrowhead=none];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def _point_label(space, generator_masks, x):
    tags = [str(g + 1) for g, mask in enumerate(generator_masks)
            if (mask >> x) & 1]
    base = space.label(x)
    return base if not tags else f'{base}\\ng{",g".join(tags)}'


def presentation_dot(presentation, name='free'):
    '''Diagram of a free-algebra presentation with its generator down-sets.'''
    return space_dot(presentation.space, presentation.generator_masks,
                     name=name)
