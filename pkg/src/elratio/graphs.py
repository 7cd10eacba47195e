"""Combinatorial structures: plain and embedded graphs, 2-trees, plane 3-trees.

Vertices are dense integer ids ``0..n-1``.  The root edge of every 2-tree is
``(0, 1)`` and vertex ``i >= 2`` is attached to ``parents[i - 2]``.

Embedding convention: ``rotation[v]`` lists the neighbours of ``v`` in
clockwise order.  A face is traced by following dart ``(u, v)`` to ``(v, w)``
where ``w`` is the clockwise successor of ``u`` around ``v``; bounded faces of
a drawing respecting the embedding come out counterclockwise and the outer face
clockwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ElrError
from .geometry import Point


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple(sorted({norm_edge(*e) for e in self.edges}))
        if len(edges) != len(self.edges):
            raise ElrError("invariant-violation", "duplicate edges")
        for u, v in edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ElrError("invariant-violation", f"bad edge {(u, v)}")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set

    def subgraph(self, edges) -> Graph:
        return Graph(self.n, tuple(norm_edge(*e) for e in edges))


def rotation_from_faces(n: int, faces) -> tuple[tuple[int, ...], ...]:
    """Rebuild the clockwise rotation system from every face walk (outer included)."""
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for face in faces:
        k = len(face)
        for i, v in enumerate(face):
            u, w = face[i - 1], face[(i + 1) % k]
            if u in succ[v]:
                raise ElrError("invariant-violation", f"dart {(u, v)} used twice")
            succ[v][u] = w
    rot = []
    for v in range(n):
        s = succ[v]
        if not s:
            rot.append(())
            continue
        start = min(s)
        cyc = [start]
        while (nxt := s[cyc[-1]]) != start:
            cyc.append(nxt)
            if len(cyc) > len(s):
                break
        if len(cyc) != len(s):
            raise ElrError("invariant-violation", f"rotation at {v} is not one cycle")
        rot.append(tuple(cyc))
    return tuple(rot)


@dataclass(frozen=True)
class PlaneGraph(Graph):
    rotation: tuple[tuple[int, ...], ...] = ()
    outer_face: tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        if len(self.rotation) != self.n:
            raise ElrError("invariant-violation", "rotation must list every vertex")
        for v, nbrs in enumerate(self.rotation):
            if len(set(nbrs)) != len(nbrs) or set(nbrs) != self.adjacency[v]:
                raise ElrError("invariant-violation", f"rotation at {v} != incident edges")
        if self.n >= 3 and len(self.edges) > 3 * self.n - 6:
            raise ElrError("invariant-violation", "too many edges for a planar graph")
        faces = self.faces()
        # connected embedding on the sphere: V - E + F = 2
        if self.n and len(faces) != 2 - self.n + len(self.edges):
            raise ElrError("invariant-violation", "rotation system is not planar")
        if self.outer_face and _canon_cycle(self.outer_face) not in {
            _canon_cycle(f) for f in faces
        }:
            raise ElrError("invariant-violation", "outer_face is not a face walk")

    @cached_property
    def _succ(self) -> list[dict[int, int]]:
        return [
            {r[i]: r[(i + 1) % len(r)] for i in range(len(r))} for r in self.rotation
        ]

    def faces(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for u in range(self.n):
            for v in self.rotation[u]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(a)
                    a, b = b, self._succ[b][a]
                out.append(tuple(walk))
        return out

    def internal_faces(self) -> list[tuple[int, ...]]:
        outer = _canon_cycle(self.outer_face)
        return [f for f in self.faces() if _canon_cycle(f) != outer]


def _canon_cycle(cyc) -> tuple[int, ...]:
    cyc = tuple(cyc)
    i = cyc.index(min(cyc))
    return cyc[i:] + cyc[:i]


# ---------------------------------------------------------------------------
# 2-trees


@dataclass(frozen=True)
class TwoTree:
    """A 2-tree given by its construction sequence."""

    n: int
    parents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 2 or len(self.parents) != self.n - 2:
            raise ElrError("invalid-size", f"{self.n} vertices, {len(self.parents)} pairs")
        adj = [set() for _ in range(self.n)]
        adj[0].add(1)
        adj[1].add(0)
        for i, (p, q) in enumerate(self.parents, start=2):
            if not (0 <= p < i and 0 <= q < i):
                raise ElrError("order-violation", f"vertex {i} has parents {(p, q)}")
            if q not in adj[p]:
                raise ElrError("invalid-parents", f"vertex {i}: {p} and {q} not adjacent")
            adj[p].add(i)
            adj[q].add(i)
            adj[i].update((p, q))
        object.__setattr__(self, "parents", tuple(norm_edge(p, q) for p, q in self.parents))
        object.__setattr__(self, "_adj", adj)

    @property
    def adjacency(self) -> list[set[int]]:
        return self._adj

    def parent_pair(self, v: int) -> tuple[int, int]:
        return self.parents[v - 2]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = [(0, 1)]
        for i, (p, q) in enumerate(self.parents, start=2):
            out.append((p, i))
            out.append((q, i))
        return tuple(out)

    @cached_property
    def apexes(self) -> dict[tuple[int, int], list[int]]:
        table = {e: [] for e in self.edges}
        for i, pq in enumerate(self.parents, start=2):
            table[pq].append(i)
        return table

    def side_edges(self, e) -> list[tuple[int, int]]:
        u, v = norm_edge(*e)
        out = []
        for w in self.apexes[(u, v)]:
            out += [(u, w), (v, w)]
        return out

    def is_trivial(self, e) -> bool:
        return not self.apexes[norm_edge(*e)]

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def two_tree_from_sequence(parent_pairs) -> TwoTree:
    pairs = tuple(tuple(p) for p in parent_pairs)
    return TwoTree(len(pairs) + 2, pairs)


def is_linear_2tree(t: TwoTree) -> bool:
    for e in t.edges:
        if sum(1 for s in t.side_edges(e) if not t.is_trivial(s)) > 1:
            return False
    return True


def nontrivial_chain(t: TwoTree) -> list[tuple[int, int]]:
    """Nontrivial edges of a linear 2-tree, in order from the root."""
    chain = []
    e = (0, 1)
    while not t.is_trivial(e):
        chain.append(e)
        nxt = [s for s in t.side_edges(e) if not t.is_trivial(s)]
        if not nxt:
            break
        e = nxt[0]
    return chain


def classify_linear(t: TwoTree) -> list[int]:
    if not is_linear_2tree(t):
        raise ElrError("not-linear", "2-tree has an edge with two nontrivial side edges")
    return _classify(t)


def _classify(t: TwoTree) -> list[int]:
    cls = [0] * t.n
    cls[0], cls[1] = 1, 2
    for i, (p, q) in enumerate(t.parents, start=2):
        cls[i] = 6 - cls[p] - cls[q]
    return cls


def class_label(c1: int, c2: int) -> str:
    a, b = sorted((c1, c2))
    return f"{a}-{b}"


@dataclass(frozen=True)
class Component:
    root: tuple[int, int]  # original ids, root[0] is the component's vertex 0
    root_class: str
    tree: TwoTree
    vertex_map: tuple[int, ...]  # local id -> original id

    @property
    def size(self) -> int:
        return self.tree.n


@dataclass(frozen=True)
class Decomposition:
    skeleton: TwoTree
    skeleton_map: tuple[int, ...]  # local skeleton id -> original id
    vertex_classes: dict[int, int]  # original id -> class, skeleton vertices only
    components: tuple[Component, ...]
    designated: tuple[tuple[int, int], ...] = ()

    @cached_property
    def skeleton_edges(self) -> frozenset[tuple[int, int]]:
        m = self.skeleton_map
        return frozenset(norm_edge(m[u], m[v]) for u, v in self.skeleton.edges)

    def max_sizes(self) -> dict[str, int]:
        """Largest component size minus one per root class (x, y, z in that order)."""
        out = {"1-3": 1, "2-3": 1, "1-2": 1}
        for c in self.components:
            out[c.root_class] = max(out[c.root_class], c.size - 1)
        return out


def _check_skeleton(g: TwoTree, h_edges) -> set[int]:
    h = {norm_edge(*e) for e in h_edges}
    if (0, 1) not in h:
        raise ElrError("invalid-skeleton", "skeleton must contain the root edge")
    gedges = set(g.edges)
    if not h <= gedges:
        raise ElrError("invalid-skeleton", "skeleton edge not in the 2-tree")
    verts = {v for e in h for v in e}
    for w in verts - {0, 1}:
        p, q = g.parent_pair(w)
        if norm_edge(p, w) not in h or norm_edge(q, w) not in h:
            raise ElrError("invalid-skeleton", f"vertex {w} lacks its parent edges")
    return verts


def _sub_two_tree(g: TwoTree, root: tuple[int, int], inner) -> tuple[TwoTree, tuple[int, ...]]:
    order = [root[0], root[1], *sorted(inner)]
    local = {v: i for i, v in enumerate(order)}
    pairs = []
    for v in order[2:]:
        p, q = g.parent_pair(v)
        if p not in local or q not in local:
            raise ElrError("invalid-skeleton", f"vertex {v} escapes its component")
        pairs.append((local[p], local[q]))
    return TwoTree(len(order), tuple(pairs)), tuple(order)


def _assemble(g, verts, h, comp_inner, designated=()) -> Decomposition:
    skel, smap = _sub_two_tree(g, (0, 1), verts - {0, 1})
    cls = _classify(g)
    classes = {v: cls[v] for v in verts}
    comps = []
    for e in sorted(h):
        inner = comp_inner.get(e, ())
        tree, vmap = _sub_two_tree(g, e, inner)
        comps.append(Component(e, class_label(cls[e[0]], cls[e[1]]), tree, vmap))
    return Decomposition(skel, smap, classes, tuple(comps), tuple(designated))


def h_components(g: TwoTree, h_edges) -> Decomposition:
    """H-components by explicit vertex removal and connected components."""
    verts = _check_skeleton(g, h_edges)
    h = {norm_edge(*e) for e in h_edges}
    adj = g.adjacency
    comp_of = {}
    comps: list[list[int]] = []
    for s in range(g.n):
        if s in verts or s in comp_of:
            continue
        comp_of[s] = len(comps)
        members = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in verts and y not in comp_of:
                    comp_of[y] = comp_of[s]
                    members.append(y)
                    queue.append(y)
        comps.append(members)
    comp_inner: dict[tuple[int, int], list[int]] = defaultdict(list)
    for members in comps:
        roots = set()
        for x in members:
            hn = sorted(adj[x] & verts)
            for i in range(len(hn)):
                for j in range(i + 1, len(hn)):
                    if (hn[i], hn[j]) in h:
                        roots.add((hn[i], hn[j]))
        if len(roots) != 1:
            raise ElrError("invalid-skeleton", f"component attaches to {sorted(roots)}")
        comp_inner[roots.pop()].extend(members)
    return _assemble(g, verts, h, comp_inner)


# ---------------------------------------------------------------------------
# plane 3-trees


def canon_face(face) -> tuple[int, int, int]:
    return _canon_cycle(face)


@dataclass(frozen=True)
class RepNode:
    face: tuple[int, int, int]  # counterclockwise triple
    vertex: int | None = None  # inserted vertex; None for a leaf
    children: tuple[int, ...] = ()


@dataclass(frozen=True)
class Plane3Tree:
    graph: PlaneGraph
    insertions: tuple[tuple[int, int, int], ...]
    nodes: tuple[RepNode, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def outer(self) -> tuple[int, int, int]:
        return self.nodes[0].face

    def leaves(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.vertex is None]

    def internal_count(self) -> int:
        return sum(1 for nd in self.nodes if nd.vertex is not None)

    @cached_property
    def subtree_depths(self) -> list[int]:
        depth = [1] * len(self.nodes)
        # children always have larger ids than their parent
        for i in range(len(self.nodes) - 1, -1, -1):
            ch = self.nodes[i].children
            if ch:
                depth[i] = 1 + max(depth[c] for c in ch)
        return depth


def plane3tree_from_insertions(seq) -> Plane3Tree:
    """Build a plane 3-tree from the outer triangle (0, 1, 2) by face insertions.

    Vertex ``3 + i`` is inserted into the face named by ``seq[i]`` (any cyclic
    rotation of the face's counterclockwise triple).
    """
    nodes: list[RepNode] = [RepNode((0, 1, 2))]
    leaf_of = {(0, 1, 2): 0}
    edges = {(0, 1), (1, 2), (0, 2)}
    inserted = []
    for i, face in enumerate(seq):
        v = 3 + i
        key = canon_face(tuple(face)) if len(face) == 3 else None
        if key not in leaf_of:
            raise ElrError("invalid-face", f"step {i}: no internal face {tuple(face)}")
        t = leaf_of.pop(key)
        a, b, c = key
        kids = []
        for f in ((a, b, v), (b, c, v), (c, a, v)):
            f = canon_face(f)
            leaf_of[f] = len(nodes) + len(kids)
            kids.append(RepNode(f))
        nodes[t] = RepNode(key, v, tuple(range(len(nodes), len(nodes) + 3)))
        nodes.extend(kids)
        edges.update(norm_edge(v, x) for x in key)
        inserted.append(key)
    n = 3 + len(inserted)
    faces = [nodes[t].face for t in leaf_of.values()] + [(0, 2, 1)]
    pg = PlaneGraph(n, tuple(sorted(edges)), rotation_from_faces(n, faces), (0, 2, 1))
    return Plane3Tree(pg, tuple(inserted), tuple(nodes))


def rep_tree_depth(t: Plane3Tree) -> int:
    return t.subtree_depths[0]


# ---------------------------------------------------------------------------
# drawings


def _num(c):
    return c if isinstance(c, Fraction) else float(c)


@dataclass(frozen=True)
class Drawing:
    """Vertex positions; coordinates are floats or exact ``Fraction``s."""

    coords: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(Point(_num(x), _num(y)) for x, y in self.coords)
        for v, (x, y) in enumerate(pts):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ElrError("invariant-violation", f"vertex {v} has non-finite coordinates")
        object.__setattr__(self, "coords", pts)

    def __getitem__(self, v: int) -> Point:
        return self.coords[v]

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return any(isinstance(c, Fraction) for p in self.coords for c in p)

    def as_float(self) -> Drawing:
        return Drawing(tuple((float(x), float(y)) for x, y in self.coords))

    def scaled(self, s) -> Drawing:
        return Drawing(tuple((x * s, y * s) for x, y in self.coords))
