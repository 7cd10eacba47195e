"""Maximal bipartite plane graphs with every edge length in (1, 1 + epsilon).

The construction script (P0/P1 vertex splits from the 4-cycle) is replayed on
a square of side 1 + epsilon/2.  Each split of v into v and x puts x close to v
inside the wedge at v that holds x's new neighbours.  Then every new edge tx
is within |vx| of the old edge tv.

As x approaches v, the only thing that can block it is the set of edges at v.
Whether a segment from x crosses one of them depends only on the direction of
x, and only changes at the directions of v's neighbours and their antipodes.
So one probe per arc between those directions, with a halving radius, always
terminates in exact arithmetic.  Coordinates are rationals: the construction
nests clusters of vertices far below double resolution after a few hundred
operations.
"""
from __future__ import annotations

import math
from functools import cmp_to_key
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from ..errors import ElrError
from ..generators import BipartiteMaximal, _Quad
from ..geometry import orient_relative as _orient_vec
from ..graphs import Drawing, norm_edge
from .report import DrawReport, make_report

MAX_HALVINGS = 4000


def _rel(pos, origin) -> np.ndarray:
    """Coordinates relative to ``origin``, subtracted exactly, then rounded."""
    ox, oy = origin
    return np.array([[float(x - ox), float(y - oy)] for x, y in pos], dtype=float)


def _clearance(rel: np.ndarray, edges: np.ndarray, v: int, pos) -> float:
    """Distance from v (the origin of ``rel``) to the nearest non-incident vertex or edge.

    Edges passing very close to v get their distance from an exact cross
    product: the float estimate has absolute error around 1e-16.
    """
    d = np.hypot(rel[:, 0], rel[:, 1])
    d[v] = math.inf
    best = float(d.min())
    keep = np.flatnonzero((edges[:, 0] != v) & (edges[:, 1] != v))
    a, b = rel[edges[keep, 0]], rel[edges[keep, 1]]
    seg = b - a
    den = np.einsum("ij,ij->i", seg, seg)
    t = np.einsum("ij,ij->i", -a, seg) / den
    line = np.abs(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]) / np.sqrt(den)
    dist = np.where(t <= 0, d[edges[keep, 0]], np.where(t >= 1, d[edges[keep, 1]], line))
    pv = pos[v]
    for i in np.flatnonzero((dist < 1e-6) & (t > 0) & (t < 1)):
        e0, e1 = edges[keep[i]]
        p, q = pos[e0], pos[e1]
        ex, ey = q[0] - p[0], q[1] - p[1]
        if not 0 < (pv[0] - p[0]) * ex + (pv[1] - p[1]) * ey < ex * ex + ey * ey:
            dist[i] = min(d[e0], d[e1])
            continue
        cross = (p[0] - pv[0]) * (q[1] - pv[1]) - (p[1] - pv[1]) * (q[0] - pv[0])
        dist[i] = abs(float(cross)) / math.sqrt(den[i])
    if len(dist):
        best = min(best, float(dist.min()))
    return best


def _eo(p, q, r) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def _same(p, q) -> bool:
    return p[0] == q[0] and p[1] == q[1]


def _in_box(p, a, b) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _exact_conflict(s1, s2) -> bool:
    """Whether two segments meet other than at a shared endpoint (exact, any rational type)."""
    a, b = s1
    c, d = s2
    shared = [(x, y) for x in (a, b) for y in (c, d) if _same(x, y)]
    if len(shared) >= 2:
        return True
    if shared:
        x = shared[0][0]
        u = b if _same(x, a) else a
        w = d if _same(x, c) else c
        if _eo(x, u, w) != 0:
            return False
        return (u[0] - x[0]) * (w[0] - x[0]) + (u[1] - x[1]) * (w[1] - x[1]) > 0
    o1, o2, o3, o4 = _eo(a, b, c), _eo(a, b, d), _eo(c, d, a), _eo(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _in_box(c, a, b))
        or (o2 == 0 and _in_box(d, a, b))
        or (o3 == 0 and _in_box(a, c, d))
        or (o4 == 0 and _in_box(b, c, d))
    )


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _cw_key(ref):
    """Sort key: clockwise angle from ``ref``, in [0, 2*pi), compared exactly."""

    def half(a):
        c = _cross(ref, a)
        if c < 0 or (c == 0 and a[0] * ref[0] + a[1] * ref[1] > 0):
            return 0
        return 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        c = _cross(a, b)
        return 1 if c > 0 else (-1 if c < 0 else 0)

    return cmp_to_key(cmp)


def _wedge_directions(vecs, du, dw) -> list[tuple]:
    """Exact probe directions inside the clockwise wedge from ``du`` to ``dw``.

    ``vecs`` are the vectors from v to its neighbours.  The cut directions are
    those vectors and their negations; every arc between consecutive cuts
    inside the wedge gets one probe, the widest arcs first.
    """
    key = _cw_key(du)
    cuts = []
    for a in list(vecs) + [(-a[0], -a[1]) for a in vecs]:
        cuts.append(a)
    cuts.sort(key=key)
    kw = key(dw)
    inside = [du] + [c for c in cuts if key(du) < key(c) < kw] + [dw]
    if dw[0] * du[1] == dw[1] * du[0] and dw[0] * du[0] + dw[1] * du[1] > 0:
        inside = [du] + [c for c in cuts if key(du) < key(c)] + [dw]
    dirs = []
    for a, b in zip(inside, inside[1:]):
        if _cross(a, b) == 0 and a[0] * b[0] + a[1] * b[1] > 0:
            continue  # parallel cuts bound an empty arc
        if _cross(a, b) < 0:
            d = (a[0] + b[0], a[1] + b[1])
        else:
            # arc of at least a half-turn: step clockwise from a by a right angle
            d = (a[1], -a[0])
        width = math.atan2(-float(_cross(a, b)), float(a[0] * b[0] + a[1] * b[1])) % (2 * math.pi)
        dirs.append((width, _short(d, a, b)))
    dirs.sort(key=lambda t: -t[0])
    return [d for _, d in dirs]


def _short(d, a, b):
    """A low-precision rational copy of d if it stays strictly inside the arc (a, b)."""
    f = (mpq(float(d[0])), mpq(float(d[1])))
    if _cross(a, f) < 0 and _cross(f, b) < 0:
        return f
    return d


def _pow2_below(r: float):
    return mpq(1, 2 ** max(0, -math.floor(math.log2(r))))


def _cw_order_matches(pos, centre, rot) -> bool:
    """Whether the neighbours of ``centre`` appear clockwise in the order ``rot`` (exact)."""
    if len(rot) < 3:
        return True
    c = pos[centre]
    vecs = {t: (pos[t][0] - c[0], pos[t][1] - c[1]) for t in rot}
    key = _cw_key(vecs[rot[0]])
    order = sorted(rot, key=lambda t: key(vecs[t]))
    return order == list(rot)


class _Placer:
    def __init__(self, eps):
        side = 1 + eps / 2
        z = mpq(0)
        self.eps = eps
        self.hi2 = (1 + eps) ** 2
        self.pos = [(z, z), (side, z), (side, side), (z, side)]
        self.adj = [{1, 3}, {0, 2}, {1, 3}, {0, 2}]
        self.quad = _Quad()
        self.radii: list = []

    def edges(self):
        return sorted({norm_edge(u, v) for u in range(len(self.adj)) for v in self.adj[u]})

    def in_window(self, p, q) -> bool:
        dx, dy = p[0] - q[0], p[1] - q[1]
        return 1 < dx * dx + dy * dy < self.hi2

    def _planar_ok(self, cand, cand_rel, nbrs, active, edges, rel) -> bool:
        """Whether the new edges from ``cand`` to ``nbrs`` avoid all ``active`` edges."""
        E0, E1 = edges[active, 0], edges[active, 1]
        A, B = rel[E0], rel[E1]
        lo_all, hi_all = np.minimum(A, B), np.maximum(A, B)
        c = np.asarray(cand_rel, dtype=float)
        pad = 1e-9
        # the candidate point itself must avoid every edge
        hit = np.flatnonzero(np.all(lo_all <= c + pad, axis=1) & np.all(hi_all >= c - pad, axis=1))
        if hit.size:
            C = np.broadcast_to(c, (hit.size, 2))
            o = _orient_vec(A[hit], B[hit], C)
            for i in hit[o == 0]:
                p, q = self.pos[E0[i]], self.pos[E1[i]]
                if _eo(p, q, cand) == 0 and _in_box(cand, p, q):
                    return False
        for t in nbrs:
            T = rel[t]
            lo, hi = np.minimum(c, T), np.maximum(c, T)
            pad = 1e-9 * (1 + np.abs(hi - lo))
            near = np.all(lo_all <= hi + pad, axis=1) & np.all(hi_all >= lo - pad, axis=1)
            inc = near & ((E0 == t) | (E1 == t))
            far = np.flatnonzero(near & ~inc)
            if far.size:
                a_, b_ = A[far], B[far]
                C = np.broadcast_to(c, a_.shape)
                Tt = np.broadcast_to(T, a_.shape)
                o1, o2 = _orient_vec(C, Tt, a_), _orient_vec(C, Tt, b_)
                o3, o4 = _orient_vec(a_, b_, C), _orient_vec(a_, b_, Tt)
                decided = (o1 != 0) & (o2 != 0) & (o3 != 0) & (o4 != 0)
                if np.any(decided & (o1 * o2 < 0) & (o3 * o4 < 0)):
                    return False
                if not self._settle(far[~decided], cand, t, E0, E1):
                    return False
            # edges sharing t: only a collinear overlap is a conflict
            for i in np.flatnonzero(inc):
                other = int(E1[i]) if E0[i] == t else int(E0[i])
                if _exact_conflict((cand, self.pos[t]), (self.pos[t], self.pos[other])):
                    return False
        return True

    def _settle(self, idx, cand, t, E0, E1) -> bool:
        """Exact check of the undecided pairs; float filter relative to t first."""
        if not idx.size:
            return True
        pt = self.pos[t]
        pts = {int(E0[i]) for i in idx} | {int(E1[i]) for i in idx}
        loc = {k: (float(self.pos[k][0] - pt[0]), float(self.pos[k][1] - pt[1])) for k in pts}
        loc_c = (float(cand[0] - pt[0]), float(cand[1] - pt[1]))
        a_ = np.array([loc[int(E0[i])] for i in idx])
        b_ = np.array([loc[int(E1[i])] for i in idx])
        C = np.broadcast_to(np.array(loc_c), a_.shape)
        Tt = np.zeros_like(a_)
        o1, o2 = _orient_vec(C, Tt, a_), _orient_vec(C, Tt, b_)
        o3, o4 = _orient_vec(a_, b_, C), _orient_vec(a_, b_, Tt)
        decided = (o1 != 0) & (o2 != 0) & (o3 != 0) & (o4 != 0)
        if np.any(decided & (o1 * o2 < 0) & (o3 * o4 < 0)):
            return False
        seg = (cand, pt)
        for i in idx[~decided]:
            if _exact_conflict(seg, (self.pos[E0[i]], self.pos[E1[i]])):
                return False
        return True

    def place(self, step) -> None:
        v, u, w, x = step.v, step.u, step.w, step.x
        if x != len(self.pos):
            raise ElrError("invalid-op", f"split creates vertex {x}, expected {len(self.pos)}")
        nbrs = [u, *step.moved, w]
        edges = np.array(self.edges(), dtype=int)
        pv = self.pos[v]
        rel = _rel(self.pos, pv)
        eps = float(self.eps)
        slack = min(min(d - 1.0, 1.0 + eps - d) for t in nbrs for d in [math.hypot(*rel[t])])
        # probe directions have length at most 2
        r = _pow2_below(min(0.25 * _clearance(rel, edges, v, self.pos), 0.125 * max(slack, 1e-300)))
        vec = {t: (self.pos[t][0] - pv[0], self.pos[t][1] - pv[1]) for t in self.adj[v]}
        dirs = _wedge_directions(list(vec.values()), vec[u], vec[w])
        removed = {norm_edge(v, t) for t in step.moved}
        active = np.array([tuple(e) not in removed for e in edges.tolist()], dtype=bool)
        self.quad.split(step.op, v, u, w, step.args)
        check_at = [v, *nbrs, x]
        for _ in range(MAX_HALVINGS):
            best = None
            for dx, dy in dirs:
                cand = (pv[0] + r * dx, pv[1] + r * dy)
                cand_rel = np.array([float(r * dx), float(r * dy)])
                score = min(
                    min(d - 1.0, 1.0 + eps - d) for t in nbrs for d in [math.hypot(*(rel[t] - cand_rel))]
                )
                if best is not None and score <= best[0]:
                    continue
                if not all(self.in_window(cand, self.pos[t]) for t in nbrs):
                    continue
                if not self._planar_ok(cand, cand_rel, nbrs, active, edges, rel):
                    continue
                trial = self.pos + [cand]
                if all(_cw_order_matches(trial, t, self.quad.rot[t]) for t in check_at):
                    best = (score, cand)
            if best is not None:
                self.radii.append(r)
                self._commit(step, best[1])
                return
            r /= 2
        raise ElrError("precision-exhausted", f"no position for vertex {x} near {v}")

    def _commit(self, step, cand) -> None:
        v, u, w, x = step.v, step.u, step.w, step.x
        self.pos.append(cand)
        self.adj.append({u, w, *step.moved})
        for t in step.moved:
            self.adj[v].discard(t)
            self.adj[t].discard(v)
            self.adj[t].add(x)
        self.adj[u].add(x)
        self.adj[w].add(x)


def draw_bipartite_maximal(bm: BipartiteMaximal, epsilon=Fraction(1, 10)) -> DrawReport:
    """Planar straight-line drawing with every edge length strictly in (1, 1 + epsilon).

    Coordinates are exact rationals.
    """
    if not epsilon > 0:
        raise ElrError("invalid-epsilon", f"epsilon={epsilon}")
    if isinstance(epsilon, float):
        eps = Fraction(epsilon).limit_denominator(10**12)
    else:
        eps = Fraction(epsilon)
    placer = _Placer(mpq(eps.numerator, eps.denominator))
    for step in bm.script:
        placer.place(step)
    drawing = Drawing(tuple((_to_fraction(x), _to_fraction(y)) for x, y in placer.pos))
    exact_ok = all(placer.in_window(placer.pos[a], placer.pos[b]) for a, b in placer.edges())
    return make_report(
        bm.graph, drawing, 1.0 + float(eps), epsilon=float(eps), lengths_certified=exact_ok
    )
