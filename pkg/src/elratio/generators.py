"""Deterministic and seeded builders for the graph families used in the experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ElrError
from .graphs import (
    Graph,
    Plane3Tree,
    PlaneGraph,
    TwoTree,
    canon_face,
    norm_edge,
    plane3tree_from_insertions,
    rotation_from_faces,
    two_tree_from_sequence,
)


@dataclass(frozen=True)
class GenSpec:
    family: str
    size: int
    seed: int = 0
    options: tuple = ()


def _need(cond: bool, what: str):
    if not cond:
        raise ElrError("invalid-size", what)


# ---------------------------------------------------------------------------
# nested triangles and the glued lower-bound graph


def nested_rings(k: int) -> list[tuple[int, int, int]]:
    """Vertex ids (a_i, b_i, c_i) of the rings of ``gen_nested_triangles(k)``, innermost first."""
    rings = [(0, 1, 2)]
    for j in range(1, k):
        rings.append((3 * j + 2, 3 * j + 1, 3 * j))
    return rings[::-1]


def gen_nested_triangles(k: int) -> Plane3Tree:
    """Nested-triangle graph with ``3k`` vertices and outer face (a_k, b_k, c_k) = (0, 1, 2).

    Each ring is inserted inward as c, then b, then a: c_{i-1} sees the whole
    outer ring, b_{i-1} sees a_i, b_i, c_{i-1} and a_{i-1} sees a_i, b_{i-1}, c_{i-1}.
    """
    _need(k >= 1, f"k={k} < 1")
    seq = []
    a, b, c = 0, 1, 2
    for j in range(1, k):
        cn, bn, an = 3 * j, 3 * j + 1, 3 * j + 2
        seq += [(a, b, c), (a, b, cn), (cn, a, bn)]
        a, b, c = an, bn, cn
    return plane3tree_from_insertions(seq)


def gen_lower_bound_graph(k: int) -> Graph:
    """Two copies of G_k glued onto K4 {a, b, c, d}; ``6k - 2`` vertices.

    Copy one keeps the ids of ``gen_nested_triangles(k)`` (a, b, c = 0, 1, 2);
    copy two maps 0, 1 to a, b, vertex 2 to d = 3k and vertex j >= 3 to 3k + j - 2.
    """
    _need(k >= 1, f"k={k} < 1")
    g = gen_nested_triangles(k).graph
    d = 3 * k

    def second(v):
        return v if v < 2 else d if v == 2 else 3 * k + v - 2

    edges = set(g.edges)
    edges.update(norm_edge(second(u), second(v)) for u, v in g.edges)
    edges.add(norm_edge(2, d))
    return Graph(6 * k - 2, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# plane 3-trees


def gen_balanced_3tree(d: int, seed: int = 0) -> Plane3Tree:
    """Plane 3-tree whose representative tree is complete ternary of depth ``d``.

    The seed only permutes the insertion order within a level (vertex labels).
    """
    _need(d >= 1, f"d={d} < 1")
    rng = random.Random(seed)
    level = [(0, 1, 2)]
    seq = []
    nxt_id = 3
    for _ in range(d - 1):
        rng.shuffle(level)
        new_level = []
        for f in level:
            a, b, c = f
            v = nxt_id
            nxt_id += 1
            seq.append(f)
            new_level += [canon_face((a, b, v)), canon_face((b, c, v)), canon_face((c, a, v))]
        level = new_level
    return plane3tree_from_insertions(seq)


def gen_random_3tree(n: int, seed: int = 0) -> Plane3Tree:
    """Insert each new vertex into a uniformly chosen internal face."""
    _need(n >= 3, f"n={n} < 3")
    rng = random.Random(seed)
    faces = [(0, 1, 2)]
    seq = []
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        seq.append(faces[i])
        faces[i] = canon_face((a, b, v))
        faces += [canon_face((b, c, v)), canon_face((c, a, v))]
    return plane3tree_from_insertions(seq)


# ---------------------------------------------------------------------------
# 2-trees


def gen_random_2tree(n: int, seed: int = 0) -> TwoTree:
    """Each new vertex attaches to a uniformly chosen existing edge."""
    _need(n >= 2, f"n={n} < 2")
    rng = random.Random(seed)
    edges = [(0, 1)]
    pairs = []
    for v in range(2, n):
        p, q = rng.choice(edges)
        pairs.append((p, q))
        edges += [norm_edge(p, v), norm_edge(q, v)]
    return two_tree_from_sequence(pairs)


def gen_linear_2tree(profile, seed: int | None = None) -> TwoTree:
    """Linear 2-tree whose i-th nontrivial edge receives ``profile[i]`` apexes.

    The chain continues along a side edge of the last apex; without a seed the
    endpoint alternates, with a seed both the apex and the endpoint are random.
    """
    profile = list(profile)
    if any(x < 1 for x in profile):
        raise ElrError("invalid-size", "profile entries must be >= 1")
    rng = random.Random(seed) if seed is not None else None
    pairs = []
    e = (0, 1)
    nxt = 2
    for i, count in enumerate(profile):
        apexes = list(range(nxt, nxt + count))
        pairs += [e] * count
        nxt += count
        if rng is None:
            w, end = apexes[-1], e[i % 2]
        else:
            w, end = rng.choice(apexes), rng.choice(e)
        e = norm_edge(end, w)
    return two_tree_from_sequence(pairs)


def gen_random_linear_2tree(n: int, seed: int = 0, max_apexes: int = 4) -> TwoTree:
    """Random linear 2-tree with exactly ``n`` vertices."""
    _need(n >= 2, f"n={n} < 2")
    rng = random.Random(seed)
    left = n - 2
    profile = []
    while left:
        c = rng.randint(1, min(max_apexes, left))
        profile.append(c)
        left -= c
    return gen_linear_2tree(profile, seed=rng.randrange(2**63))


# ---------------------------------------------------------------------------
# maximal bipartite plane graphs (quadrangulations)


@dataclass(frozen=True)
class Split:
    """Vertex ``v`` expanded towards the new vertex ``x``.

    ``x`` becomes adjacent to ``u``, ``w`` and to ``moved``, the neighbours of
    ``v`` strictly between ``u`` and ``w`` in clockwise order; ``v`` loses
    ``moved``.  P0 is the case ``moved == ()``.
    """

    op: str
    v: int
    u: int
    w: int
    x: int
    moved: tuple[int, ...]
    args: tuple[int, ...]


@dataclass(frozen=True)
class BipartiteMaximal:
    graph: PlaneGraph
    script: tuple[Split, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self):
        return self.graph.edges


class _Quad:
    def __init__(self):
        self.n = 4
        self.rot: list[list[int]] = [list(r) for r in rotation_from_faces(4, [(0, 1, 2, 3), (0, 3, 2, 1)])]
        self.outer = (0, 3, 2, 1)
        self.script: list[Split] = []

    def faces(self):
        return PlaneGraph(self.n, self._edges(), tuple(map(tuple, self.rot)), self.outer).faces()

    def _edges(self):
        return tuple(sorted({norm_edge(u, v) for u in range(self.n) for v in self.rot[u]}))

    def split(self, op, v, u, w, args):
        if not (0 <= v < self.n) or u not in self.rot[v] or w not in self.rot[v] or u == w:
            raise ElrError("invalid-op", f"{op}{args}: bad vertices")
        r = self.rot[v]
        i, j = r.index(u), r.index(w)
        between = []
        t = (i + 1) % len(r)
        while t != j:
            between.append(r[t])
            t = (t + 1) % len(r)
        if op == "P0" and between:
            raise ElrError("invalid-op", f"P0{args}: not a face")
        if op == "P1" and not between:
            raise ElrError("invalid-op", f"P1{args}: nothing to move")
        x = self.n
        self.n += 1
        # outer walk: v replaced by x if its walk-neighbours lie in the moved wedge
        interval = [u, *between]
        o = list(self.outer)
        if v in o:
            k = o.index(v)
            if o[k - 1] in interval:
                o[k] = x
                self.outer = tuple(o)
        self.rot[v] = [y for y in r if y not in between]
        self.rot.append([u, *between, w])
        for y in between:
            ry = self.rot[y]
            ry[ry.index(v)] = x
        for y, before in ((u, v), (w, v)):
            ry = self.rot[y]
            k = ry.index(before)
            # x sits on the moved side of v: after v around u, before v around w
            if y == u:
                ry.insert(k, x)
            else:
                ry.insert(k + 1, x)
        self.script.append(Split(op, v, u, w, x, tuple(between), tuple(args)))

    def p0(self, face):
        u, v, w, z = face
        fs = {_rot4(f) for f in self.faces()}
        if len(face) != 4 or _rot4(tuple(face)) not in fs:
            raise ElrError("invalid-op", f"P0{tuple(face)}: not a face walk")
        self.split("P0", v, u, w, tuple(face))

    def p1(self, path):
        u, v, w = path
        self.split("P1", v, u, w, tuple(path))

    def build(self) -> BipartiteMaximal:
        g = PlaneGraph(self.n, self._edges(), tuple(map(tuple, self.rot)), self.outer)
        return BipartiteMaximal(g, tuple(self.script))


def _rot4(f):
    i = f.index(min(f))
    return tuple(f[i:] + f[:i])


def gen_bipartite_maximal(script=None, n: int | None = None, seed: int = 0) -> BipartiteMaximal:
    """Maximal bipartite plane graph from the 4-cycle by P0/P1 operations.

    ``script`` is a list of ``("P0", (u, v, w, z))`` (a face walk) or
    ``("P1", (u, v, w))`` items.  Without a script, ``n`` vertices are grown at
    random: P0 or P1 with probability 1/2 each, on a uniformly chosen site.
    """
    q = _Quad()
    if script is not None:
        for i, item in enumerate(script):
            op, args = item[0], tuple(item[1])
            try:
                if op == "P0":
                    q.p0(args)
                elif op == "P1":
                    if len(args) != 3:
                        raise ElrError("invalid-op", f"P1{args}")
                    q.p1(args)
                else:
                    raise ElrError("invalid-op", f"unknown operation {op!r}")
            except ElrError as err:
                raise ElrError("invalid-op", f"step {i}: {err}") from None
            except (ValueError, IndexError):
                raise ElrError("invalid-op", f"step {i}: malformed {item!r}") from None
        return q.build()
    _need(n is not None and n >= 4, f"n={n} < 4")
    rng = random.Random(seed)
    while q.n < n:
        if rng.random() < 0.5:
            f = rng.choice(q.faces())
            s = rng.randrange(4)
            q.p0(f[s:] + f[:s])
        else:
            sites = [v for v in range(q.n) if len(q.rot[v]) >= 3]
            if not sites:
                continue
            v = rng.choice(sites)
            r = q.rot[v]
            i = rng.randrange(len(r))
            gap = rng.randrange(2, len(r))
            q.p1((r[i], v, r[(i + gap) % len(r)]))
    return q.build()


# ---------------------------------------------------------------------------
# sparse test graphs


def gen_random_sparse_graph(n: int, seed: int = 0, neighbours: int = 2) -> Graph:
    """Random geometric graph: each of n uniform points links to its nearest neighbours.

    The result is sparse and usually close to planar, with a small chromatic
    number; it is the input family for the coloring-based drawer.
    """
    _need(n >= 1, f"n={n} < 1")
    rng = random.Random(seed)
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    edges = set()
    for i, (x, y) in enumerate(pts):
        near = sorted(
            (j for j in range(n) if j != i),
            key=lambda j: ((pts[j][0] - x) ** 2 + (pts[j][1] - y) ** 2, j),
        )
        for j in near[:neighbours]:
            edges.add(norm_edge(i, j))
    return Graph(n, tuple(sorted(edges)))
