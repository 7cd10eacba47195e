"""Proper (possibly crossing) drawings from colorings, and colorings from drawings.

Forward: color classes go to small disks around distinct points of a
ceil(sqrt k) x ceil(sqrt k) unit grid, so every edge joins two disks whose
centres are between 1 and sqrt(2k) apart.  Backward: a proper drawing with
ratio h, scaled to minimum edge length 1, is colored by the position of each
vertex inside a tiling of big squares cut into small squares.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..errors import ElrError
from ..geometry import PointTable
from ..graphs import Drawing, Graph
from ..metrics import length_stats, verify_proper
from .report import DrawReport, make_report

MAX_NUDGES = 64


def smallest_last_coloring(g: Graph) -> list[int]:
    """Greedy coloring along a smallest-last vertex order."""
    adj = g.adjacency
    deg = [len(adj[v]) for v in range(g.n)]
    removed = [False] * g.n
    buckets: dict[int, set[int]] = {}
    for v in range(g.n):
        buckets.setdefault(deg[v], set()).add(v)
    order = []
    low = 0
    for _ in range(g.n):
        while not buckets.get(low):
            low += 1
        v = min(buckets[low])
        buckets[low].discard(v)
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets.setdefault(deg[u], set()).add(u)
                low = min(low, deg[u])
    color = [-1] * g.n
    for v in reversed(order):
        used = {color[u] for u in adj[v]}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)


def _collinear_triples(pts: PointTable, limit: int = 400) -> list[int]:
    """Vertices taking part in an exactly collinear triple (checked for n <= limit)."""
    n = len(pts.exact)
    if n < 3 or n > limit:
        return []
    bad = set()
    idx = np.arange(n)
    for i in range(n - 2):
        j, k = np.meshgrid(idx[i + 1 :], idx[i + 1 :], indexing="ij")
        mask = j < k
        j, k = j[mask], k[mask]
        o = pts.orient(np.full(j.shape, i), j, k)
        hit = np.flatnonzero(o == 0)
        if hit.size:
            bad.add(int(k[hit[0]]))
    return sorted(bad)


def draw_by_coloring(g: Graph, epsilon: float = 0.3, seed: int = 0, colors=None) -> DrawReport:
    """Proper straight-line drawing with edge lengths in (1 - 2eps/3, sqrt(2k) + 2eps/3)."""
    if not 0 < epsilon < 1:
        raise ElrError("invalid-epsilon", f"epsilon={epsilon} outside (0, 1)")
    if colors is None:
        colors = smallest_last_coloring(g)
    if len(colors) != g.n or not is_proper_coloring(g, colors):
        raise ElrError("improper-input", "coloring is not proper")
    palette = sorted(set(colors))
    k = max(len(palette), 1)
    side = math.ceil(math.sqrt(k))
    centre = {c: (float(i % side), float(i // side)) for i, c in enumerate(palette)}
    members: dict[int, list[int]] = {}
    for v in range(g.n):
        members.setdefault(colors[v], []).append(v)
    rng = random.Random(seed)
    offset = {c: rng.uniform(0, 2 * math.pi) for c in palette}
    radius = epsilon / 6
    angle = [0.0] * g.n
    for c, vs in members.items():
        m = len(vs)
        for j, v in enumerate(vs):
            angle[v] = 2 * math.pi * j / m + offset[c]

    def place(v):
        cx, cy = centre[colors[v]]
        return (cx + radius * math.cos(angle[v]), cy + radius * math.sin(angle[v]))

    coords = [place(v) for v in range(g.n)]
    nudges = 0
    while True:
        bad = _collinear_triples(PointTable(coords))
        if not bad:
            break
        nudges += 1
        if nudges > MAX_NUDGES:
            raise ElrError("precision-exhausted", "could not break collinear triples")
        for v in bad:
            angle[v] += rng.uniform(1e-6, 1e-3)
            coords[v] = place(v)
    drawing = Drawing(tuple(coords))
    bound = (math.sqrt(2 * k) + 2 * epsilon / 3) / (1 - 2 * epsilon / 3)
    return make_report(
        g,
        drawing,
        bound,
        colors=tuple(colors),
        num_colors=k,
        epsilon=epsilon,
        length_window=(1 - 2 * epsilon / 3, math.sqrt(2 * k) + 2 * epsilon / 3),
        nudges=nudges,
    )


@dataclass(frozen=True)
class TilingColoring:
    colors: tuple[int, ...]
    cells: int  # small squares per side of a big square
    big_side: float
    ratio: float

    @property
    def palette_bound(self) -> int:
        return self.cells**2

    @property
    def used(self) -> int:
        return len(set(self.colors))


def color_from_drawing(g: Graph, drawing: Drawing, epsilon: float = 0.1) -> TilingColoring:
    """Proper coloring read off a proper drawing, with at most ceil(sqrt2 (h+1+eps))^2 colors."""
    if not epsilon > 0:
        raise ElrError("invalid-epsilon", f"epsilon={epsilon}")
    if not verify_proper(g, drawing).ok:
        raise ElrError("improper-input", "drawing is not proper")
    stats = length_stats(g, drawing)
    if stats["ratio"] is None:
        return TilingColoring(tuple([0] * g.n), 1, 1.0, 1.0)
    scale = 1.0 / stats["min_len"]
    h = stats["ratio"]
    eps = float(epsilon)
    ell = h + 1 + eps
    while abs(math.sqrt(2) * ell - round(math.sqrt(2) * ell)) < 1e-9:
        eps *= 1.01
        ell = h + 1 + eps
    cells = math.ceil(math.sqrt(2) * ell)
    small = ell / cells
    colors = []
    for x, y in drawing.as_float():
        lx = (x * scale) % ell
        ly = (y * scale) % ell
        col = min(int(lx // small), cells - 1)
        row = min(int(ly // small), cells - 1)
        colors.append(row * cells + col)
    return TilingColoring(tuple(colors), cells, ell, h)
