"""Drawing plane 3-trees with edge-length ratio at most depth + 1 + epsilon.

Every internal face is kept as a role-labelled triangle (a, b, c): side ab has
x-extension exactly 1, ac at least the face's subtree depth and bc at least
one more, so a lies between b and c horizontally.  The vertex inserted into
the face goes at horizontal distance 1 from c towards a, halfway up the
vertical chord of the face there.

x-coordinates are integers and y-coordinates exact rationals: the chords
shrink by a factor of about twice the depth per level, far below double
resolution on deep instances.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ElrError
from ..graphs import Drawing, Plane3Tree, canon_face, rep_tree_depth
from .report import DrawReport, make_report


def _chord(tri, x):
    ys = []
    for i in range(3):
        p, q = tri[i], tri[(i + 1) % 3]
        if p[0] != q[0] and min(p[0], q[0]) <= x <= max(p[0], q[0]):
            ys.append(p[1] + (x - p[0]) / (q[0] - p[0]) * (q[1] - p[1]))
    return min(ys), max(ys)


def draw_plane_3tree(t: Plane3Tree, epsilon=Fraction(1, 10)) -> DrawReport:
    """Straight-line drawing with every edge length in [1, k + 1 + epsilon], k = depth."""
    if not epsilon > 0:
        raise ElrError("invalid-epsilon", f"epsilon={epsilon}")
    eps = Fraction(epsilon)
    k = rep_tree_depth(t)
    a, c, b = t.outer  # the outer face (a, c, b) is counterclockwise
    pos = {b: (Fraction(0), eps), a: (Fraction(1), Fraction(0)), c: (Fraction(k + 1), eps)}
    nodes = t.nodes
    stack = [(0, (a, b, c))]
    while stack:
        nid, (a, b, c) = stack.pop()
        node = nodes[nid]
        if node.vertex is None:
            continue
        v = node.vertex
        xa, xc = pos[a][0], pos[c][0]
        x = xc + (1 if xa > xc else -1)
        lo, hi = _chord((pos[a], pos[b], pos[c]), x)
        pos[v] = (x, (lo + hi) / 2)
        children = {nodes[ch].face: ch for ch in node.children}
        for roles in ((a, b, v), (v, c, b), (v, c, a)):
            key = canon_face(roles)
            if key not in children:
                key = canon_face(roles[::-1])
            stack.append((children[key], roles))
    drawing = Drawing(tuple(pos[v] for v in range(t.n)))
    return make_report(t.graph, drawing, k + 1 + float(eps), depth=k, epsilon=float(eps))
