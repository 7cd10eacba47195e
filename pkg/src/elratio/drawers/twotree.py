"""2-trees: skeleton decomposition, the linear 2-tree drawer and the recursive drawer.

The recursive drawer guarantees every edge length lies in [1, f(N - 1)] with
f(n) = n ** log2(phi).  Frames are triangles whose longest side is the root
edge; only that property (the frame's diameter is its root edge) is used.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from ..errors import ElrError
from ..geometry import orient, orient_relative, point_in_triangle, segments_conflict
from ..graphs import (
    Decomposition,
    Drawing,
    TwoTree,
    _assemble,
    classify_linear,
    is_linear_2tree,
    nontrivial_chain,
    norm_edge,
)
from ..metrics import VerifyReport
from .report import DrawReport, make_report

PHI = (1 + math.sqrt(5)) / 2
GOLDEN_EXPONENT = math.log2(PHI)


@dataclass(frozen=True)
class GoldenWeight:
    phi: float = PHI
    exponent: float = GOLDEN_EXPONENT

    def __call__(self, n: int) -> float:
        return f_weight(n)


def f_weight(n: int) -> float:
    if n < 1:
        raise ElrError("invalid-size", f"f({n}) undefined")
    return float(n) ** GOLDEN_EXPONENT


# ---------------------------------------------------------------------------
# decomposition


def _subtree_sizes(g: TwoTree) -> dict[tuple[int, int], int]:
    below = {e: 0 for e in g.edges}
    for w in range(g.n - 1, 1, -1):
        p, q = g.parent_pair(w)
        below[(p, q)] += 1 + below[norm_edge(p, w)] + below[norm_edge(q, w)]
    return below


def _descendants(g: TwoTree, e) -> list[int]:
    out = []
    stack = list(g.apexes[norm_edge(*e)])
    while stack:
        w = stack.pop()
        out.append(w)
        for p in g.parent_pair(w):
            stack.extend(g.apexes[norm_edge(p, w)])
    return out


def decompose_2tree(g: TwoTree) -> Decomposition:
    """Greedy skeleton: follow the side edge carrying the largest hanging component.

    Ties go to the side edge whose apex has the smallest id, then to the
    smaller other endpoint.
    """
    below = _subtree_sizes(g)
    e = (0, 1)
    designated = [e]
    verts = {0, 1, *g.apexes[e]}
    while True:
        sides = g.side_edges(e)
        if not sides:
            break
        # side edge (u, w): w is the apex
        best = min(sides, key=lambda s: (-below[norm_edge(*s)], s[1], s[0]))
        if below[norm_edge(*best)] == 0:
            break
        e = norm_edge(*best)
        designated.append(e)
        verts.update(g.apexes[e])
    h = {(0, 1)}
    for w in verts - {0, 1}:
        p, q = g.parent_pair(w)
        h.add(norm_edge(p, w))
        h.add(norm_edge(q, w))
    dset = set(designated)
    comp_inner = {s: _descendants(g, s) for s in h if s not in dset and below[s]}
    return _assemble(g, verts, h, comp_inner, designated)


# ---------------------------------------------------------------------------
# linear 2-trees


@dataclass(frozen=True)
class L2TParams:
    frame: tuple  # (a1, a2, a3)
    l12: float
    l13: float
    l23: float

    def check(self) -> None:
        a1, a2, a3 = self.frame
        if orient(a1, a2, a3) == 0:
            raise ElrError("frame-too-small", "degenerate frame")
        L = math.dist(a1, a2)
        if min(self.l12, self.l13, self.l23) < 1:
            raise ElrError("frame-too-small", "class lengths must be >= 1")
        if self.l13 + self.l23 > L or self.l12 >= L:
            raise ElrError(
                "frame-too-small",
                f"|a1a2|={L} vs l13+l23={self.l13 + self.l23}, l12={self.l12}",
            )


def _lerp(p, q, t):
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _exact(p) -> tuple:
    return (mpq(p[0]), mpq(p[1]))


def _fpt(p) -> tuple:
    return (float(p[0]), float(p[1]))


def _flen(p, q) -> float:
    return math.hypot(float(q[0] - p[0]), float(q[1] - p[1]))


def _to_fraction(x) -> Fraction:
    x = mpq(x)
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class L2TSetup:
    a: tuple
    p: tuple
    q: tuple
    eps: float
    b_points: list
    c_points: list
    d_points: list


def l2t_setup(params: L2TParams, nb: int, nc: int, nd: int) -> L2TSetup:
    """Point sets for the linear 2-tree drawer, in exact rational coordinates.

    The foot p sits in the middle of the admissible stretch of a1a2, a halfway
    up the frame above p.  b-points and q split the first min(eps/3, |ap|/2)
    of a->p evenly; c- and d-points split the first min(eps/3, |a_i q|/2) of
    a1->q and a2->q, starting at a1 and a2.  Every point is an exact lerp whose
    ratio is a float, so thin frames stay representable.
    """
    a1, a2, a3 = (_exact(v) for v in params.frame)
    # lengths come from exact differences rounded once, so they stay
    # accurate however thin the frame is
    L = _flen(a1, a2)
    ux, uy = float(a2[0] - a1[0]) / L, float(a2[1] - a1[1]) / L
    t3 = float(a3[0] - a1[0]) * ux + float(a3[1] - a1[1]) * uy
    s = (params.l13 + L - params.l23) / 2
    p = _lerp(a1, a2, mpq(s / L))
    # the frame point straight above p
    top = _lerp(a1, a3, mpq(s / t3)) if s <= t3 else _lerp(a2, a3, mpq((L - s) / (L - t3)))
    a = ((p[0] + top[0]) / 2, (p[1] + top[1]) / 2)
    eps = min(_flen(a, a1) - params.l13, _flen(a, a2) - params.l23, L - params.l12)
    if not eps > 0:
        raise ElrError("frame-too-small", f"no slack (eps={eps})")
    ap = _flen(a, p)
    if not ap > 0:
        raise ElrError("precision-exhausted", "frame has no height")
    q = _lerp(a, p, mpq(min(eps / 3, ap / 2) / ap))
    b_points = [_lerp(a, q, mpq(i, nb)) for i in range(nb)] if nb else []

    def ray(start, count):
        sq = _flen(start, q)
        r = mpq(min(eps / 3, sq / 2) / sq)
        return [start] + [_lerp(start, q, r * mpq(i, count - 1)) for i in range(1, count)]

    return L2TSetup(a, p, q, eps, b_points, ray(a1, nc), ray(a2, nd))


def _l2t_positions(h: TwoTree, params: L2TParams) -> list:
    if not is_linear_2tree(h):
        raise ElrError("not-linear", "l2t_draw needs a linear 2-tree")
    params.check()
    cls = classify_linear(h)
    counts = {c: cls.count(c) for c in (1, 2, 3)}
    st = l2t_setup(params, counts[3], counts[1], counts[2])
    points = {1: st.c_points, 2: st.d_points, 3: st.b_points}
    used = {1: 1, 2: 1, 3: 0}
    pos = [None] * h.n
    pos[0], pos[1] = st.c_points[0], st.d_points[0]
    chain = nontrivial_chain(h)
    for i, e in enumerate(chain):
        apexes = list(h.apexes[e])
        if i + 1 < len(chain):
            nxt = chain[i + 1]
            w = nxt[0] if nxt[0] in apexes else nxt[1]
            apexes.remove(w)
            apexes.append(w)
        c = cls[apexes[0]]
        for w in apexes:
            pos[w] = points[c][used[c]]
            used[c] += 1
    return pos


def _as_drawing(pos) -> Drawing:
    return Drawing(tuple((_to_fraction(x), _to_fraction(y)) for x, y in pos))


def l2t_draw(h: TwoTree, params: L2TParams) -> Drawing:
    """Planar drawing of a linear 2-tree inside the frame, with exact coordinates.

    v1 and v2 land on a1 and a2, every other vertex strictly inside the frame,
    and every edge of class x-y is longer than the corresponding threshold.
    """
    return _as_drawing(_l2t_positions(h, params))


def l2t_properties(h: TwoTree, params: L2TParams, drawing: Drawing) -> VerifyReport:
    """Check the three guarantees of ``l2t_draw`` on a drawing.

    L1: v1 and v2 sit exactly on a1 and a2.  L2: every other vertex is strictly
    inside the frame.  L3: an edge between classes i and j is strictly longer
    than l_ij.
    """
    a1, a2, a3 = params.frame
    c = drawing.coords
    viol = []
    if _exact(c[0]) != _exact(a1) or _exact(c[1]) != _exact(a2):
        viol.append(("L1", (c[0], c[1])))
    for v in range(2, h.n):
        if not point_in_triangle(c[v], (a1, a2, a3), strict=True):
            viol.append(("L2", v))
    cls = classify_linear(h)
    limit = {(1, 2): params.l12, (1, 3): params.l13, (2, 3): params.l23}
    for u, v in h.edges:
        key = tuple(sorted((cls[u], cls[v])))
        if key not in limit:
            viol.append(("L3-class", (u, v)))
        elif not math.dist(_fpt(c[u]), _fpt(c[v])) > limit[key]:
            viol.append(("L3", (u, v)))
    return VerifyReport.from_violations(viol)


# ---------------------------------------------------------------------------
# general 2-trees


@dataclass
class _Plan:
    """Decomposition of one (sub)instance with its class thresholds.

    A threshold is f(x) unless the components of that class need a longer
    root edge than f(x) to be drawn themselves (this happens only when a
    component is a single triangle, which needs a root of length 2 > f(2)).
    """

    dec: Decomposition | None
    l12: float
    l13: float
    l23: float
    children: dict  # component index -> _Plan

    @property
    def required(self) -> float:
        return max(self.l13 + self.l23, self.l12 * (1 + 1e-9))


def _plan(t: TwoTree) -> _Plan:
    if t.n == 2:
        return _Plan(None, 1.0, 1.0, 1.0, {})
    dec = decompose_2tree(t)
    sizes = dec.max_sizes()
    need = {"1-2": f_weight(sizes["1-2"]), "1-3": f_weight(sizes["1-3"]), "2-3": f_weight(sizes["2-3"])}
    children = {}
    for i, comp in enumerate(dec.components):
        if comp.size > 2:
            sub = _plan(comp.tree)
            children[i] = sub
            need[comp.root_class] = max(need[comp.root_class], sub.required)
    return _Plan(dec, need["1-2"], need["1-3"], need["2-3"], children)


class _Recursion:
    def __init__(self, g: TwoTree):
        self.g = g
        self.pos: list = [None] * g.n
        self.min_height = math.inf
        self.depth = 0

    def draw(self, plan: _Plan, gmap, frame, level: int) -> None:
        self.depth = max(self.depth, level)
        dec = plan.dec
        if dec is None:
            return
        sk = _l2t_positions(dec.skeleton, L2TParams(frame, plan.l12, plan.l13, plan.l23))
        local = {}
        for i, v in enumerate(dec.skeleton_map):
            local[v] = sk[i]
            self.pos[gmap[v]] = sk[i]
        segs = [(local[dec.skeleton_map[u]], local[dec.skeleton_map[v]]) for u, v in dec.skeleton.edges]
        segs += [(frame[0], frame[2]), (frame[1], frame[2])]
        obstacles = _Obstacles(segs, list(local.values()) + [frame[2]])
        for i, sub in plan.children.items():
            comp = dec.components[i]
            u, v = comp.root
            pu, pv = local[u], local[v]
            w = self._frame_apex(pu, pv, obstacles)
            obstacles.add([(pu, w), (pv, w)], [w])
            self.draw(sub, [gmap[x] for x in comp.vertex_map], (pu, pv, w), level + 1)

    def _frame_apex(self, pu, pv, obstacles):
        """Apex over the midpoint of pu-pv, as high as obstacles allow (halving search)."""
        fu, fv = _fpt(pu), _fpt(pv)
        L = math.dist(fu, fv)
        mid = ((pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2)
        n = (mpq(-(fv[1] - fu[1]) / L), mpq((fv[0] - fu[0]) / L))
        best = None
        reach = obstacles.apex_reach(pu, pv, L, L / 4)
        for sgn in (1, -1):
            # start just below the float estimate; the exact test decides
            d = min(L / 4, reach[sgn] / 2)
            while d >= _APEX_FLOOR * L:
                k = mpq(sgn * d)
                w = (mid[0] + k * n[0], mid[1] + k * n[1])
                if obstacles.triangle_free(pu, pv, w):
                    if best is None or d > best[0]:
                        best = (d, w)
                    break
                d /= 2
        if best is None:
            raise ElrError("precision-exhausted", f"no room for a frame on edge {fu}-{fv}")
        self.min_height = min(self.min_height, best[0])
        return best[1]


# relative height below which the apex search gives up; far beyond any frame
# an actual instance needs, it only guards against an endless search
_APEX_FLOOR = 2.0**-200


class _Obstacles:
    """Drawn segments and points a new frame triangle must avoid.

    Candidates are found by float bounding boxes.  Tests first run a filtered
    orientation on the stored doubles, with the bound widened to cover their
    rounding; only cases that stay undecided are settled on the exact rationals.
    """

    def __init__(self, segs, pts):
        self.segs = []
        self.pts = []
        self.seg_a = np.empty((0, 2))
        self.seg_b = np.empty((0, 2))
        self.pt_arr = np.empty((0, 2))
        self.scale = 1.0
        self.add(segs, pts)

    def add(self, segs, pts):
        self.segs += segs
        self.pts += pts
        fa = np.array([_fpt(s[0]) for s in segs], dtype=float).reshape(-1, 2)
        fb = np.array([_fpt(s[1]) for s in segs], dtype=float).reshape(-1, 2)
        self.seg_a = np.vstack([self.seg_a, fa])
        self.seg_b = np.vstack([self.seg_b, fb])
        self.scale = max(self.scale, float(np.abs(fa).max(initial=0)) + 1, float(np.abs(fb).max(initial=0)) + 1)
        self.pt_arr = np.vstack([self.pt_arr, np.array([_fpt(p) for p in pts], dtype=float).reshape(-1, 2)])

    def apex_reach(self, pu, pv, L: float, dmax: float) -> dict:
        """Float estimate, per side of pu-pv, of the highest apex over the midpoint.

        Raising the apex only grows the triangle.  A point at distance g from
        the nearer end of the base (measured along it) and height h enters once
        the apex height reaches h * L / (2 g).  Along a segment that value is
        smallest at an endpoint or where the segment crosses the perpendicular
        bisector.  Points the doubles cannot place reliably, those very close
        to the base line or to pu and pv, are measured exactly.
        """
        fu, fv = np.array(_fpt(pu)), np.array(_fpt(pv))
        t = (fv - fu) / L
        nrm = np.array([-t[1], t[0]])
        mid = (fu + fv) / 2
        corners = np.array([fu, fv, mid + dmax * nrm, mid - dmax * nrm])
        lo, hi = corners.min(axis=0), corners.max(axis=0)
        SA, SB = self.seg_a, self.seg_b
        hit = np.flatnonzero(
            (np.minimum(SA[:, 0], SB[:, 0]) <= hi[0]) & (np.maximum(SA[:, 0], SB[:, 0]) >= lo[0])
            & (np.minimum(SA[:, 1], SB[:, 1]) <= hi[1]) & (np.maximum(SA[:, 1], SB[:, 1]) >= lo[1])
        )
        # the base edge itself is no obstacle
        base = (np.all(SA[hit] == fu, axis=1) & np.all(SB[hit] == fv, axis=1)) | (
            np.all(SA[hit] == fv, axis=1) & np.all(SB[hit] == fu, axis=1)
        )
        hit = hit[~base]
        m = len(hit)
        X = np.vstack([SA[hit], SB[hit], self.pt_arr]) - fu
        along, h = X @ t, X @ nrm  # along is measured from pu
        tol = 1e-9 * self.scale
        shaky = np.flatnonzero(
            (np.abs(h) < tol) | (np.abs(along) < tol) | (np.abs(along - L) < tol)
        )
        ex, ey = pv[0] - pu[0], pv[1] - pu[1]
        for j in shaky:
            x = self.segs[hit[j]][0] if j < m else self.segs[hit[j - m]][1] if j < 2 * m else self.pts[j - 2 * m]
            dx, dy = x[0] - pu[0], x[1] - pu[1]
            along[j] = float(dx * ex + dy * ey) / L
            h[j] = float(ex * dy - ey * dx) / L
        gap = np.minimum(along, L - along)
        inside = gap > 0
        d = [h[inside] * (L / 2) / gap[inside]]
        # bisector crossings of segments
        ca, cb = along[:m] - L / 2, along[m : 2 * m] - L / 2
        cross = ca * cb < 0
        lam = ca[cross] / (ca[cross] - cb[cross])
        d.append(h[:m][cross] + lam * (h[m : 2 * m][cross] - h[:m][cross]))
        d = np.concatenate(d)
        up, down = d[d > 0], -d[d < 0]
        return {1: float(up.min(initial=np.inf)), -1: float(down.min(initial=np.inf))}

    def triangle_free(self, pu, pv, w) -> bool:
        ft = np.array([_fpt(pu), _fpt(pv), _fpt(w)])
        lo, hi = ft.min(axis=0), ft.max(axis=0)
        # stored doubles are each within one rounding of the exact data
        scale = max(self.scale, float(np.abs(ft).max()) + 1)
        pad = 1e-14 * scale
        lo, hi = lo - pad, hi + pad
        SA, SB = self.seg_a, self.seg_b
        hit = np.flatnonzero(
            (np.minimum(SA[:, 0], SB[:, 0]) <= hi[0]) & (np.maximum(SA[:, 0], SB[:, 0]) >= lo[0])
            & (np.minimum(SA[:, 1], SB[:, 1]) <= hi[1]) & (np.maximum(SA[:, 1], SB[:, 1]) >= lo[1])
        )
        slack = 8 * 2.0**-53 * scale
        if len(hit) and not self._segments_clear(pu, pv, w, ft, hit, slack):
            return False
        P = self.pt_arr
        near = np.flatnonzero(np.all((P >= lo) & (P <= hi), axis=1))
        return not len(near) or self._points_clear(pu, pv, w, ft, near, slack)

    def _segments_clear(self, pu, pv, w, ft, idx, slack) -> bool:
        n = len(idx)
        o0 = ft[0]
        A, B = self.seg_a[idx] - o0, self.seg_b[idx] - o0
        W = np.broadcast_to(ft[2] - o0, (n, 2))
        sides = ((pu, np.zeros((n, 2))), (pv, np.broadcast_to(ft[1] - o0, (n, 2))))
        # one filtered call for all eight orientation queries
        P = np.vstack([m for _, X in sides for m in (X, X, A, A)])
        Q = np.vstack([m for _, X in sides for m in (W, W, B, B)])
        R = np.vstack([m for _, X in sides for m in (A, B, X, W)])
        o = orient_relative(P, Q, R, slack).reshape(2, 4, n)
        for k, (side, X) in enumerate(sides):
            o1, o2, o3, o4 = o[k]
            # doubles that differ mean the exact endpoints differ
            may_a = np.all(A == X, axis=1)
            may_b = np.all(B == X, axis=1)
            general = ~may_a & ~may_b & (o1 != 0) & (o2 != 0) & (o3 != 0) & (o4 != 0)
            if np.any(general & (o1 != o2) & (o3 != o4)):
                return False
            for i in np.flatnonzero(~general):
                seg = self.segs[idx[i]]
                # a segment hanging off the side's endpoint only conflicts when collinear
                if (seg[0] == side and o2[i] != 0) or (seg[1] == side and o1[i] != 0):
                    continue
                if segments_conflict((side, w), seg):
                    return False
        return True

    def _points_clear(self, pu, pv, w, ft, idx, slack) -> bool:
        n = len(idx)
        o0 = ft[0]
        R = self.pt_arr[idx] - o0
        O = np.zeros((n, 2))
        V, W = np.broadcast_to(ft[1] - o0, (n, 2)), np.broadcast_to(ft[2] - o0, (n, 2))
        s = orient(pu, pv, w)
        oa, ob, oc = orient_relative(np.vstack([O, V, W]), np.vstack([V, W, O]), np.vstack([R, R, R]), slack).reshape(3, n)
        decided = (oa != 0) & (ob != 0) & (oc != 0)
        if np.any(decided & (oa == s) & (ob == s) & (oc == s)):
            return False
        for i in np.flatnonzero(~decided):
            p = self.pts[idx[i]]
            if p == pu or p == pv:
                continue
            if point_in_triangle(p, (pu, pv, w), strict=False):
                return False
        return True


def draw_2tree(g: TwoTree) -> DrawReport:
    """Planar drawing with every edge length in [1, L], L = f(N - 1) when attainable.

    L grows beyond f(N - 1) only if the instance's own threshold demand exceeds
    it; the report then carries ``bound_exceeded=True``.
    """
    if g.n == 3:
        # the threshold scheme would need a root of length 2 > f(2); an
        # equilateral triangle has ratio 1
        h = math.sqrt(3) / 2
        drawing = Drawing(((0.0, 0.0), (1.0, 0.0), (0.5, h)))
        return make_report(g.graph(), drawing, f_weight(2), frame_size=1.0, bound_exceeded=False)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    try:
        plan = _plan(g)
        bound = f_weight(g.n - 1)
        L = max(bound, plan.required) if plan.dec is not None else bound
        ml = mpq(L)
        frame = ((mpq(0), mpq(0)), (ml, mpq(0)), (ml / 2, ml / 2))
        rec = _Recursion(g)
        rec.pos[0], rec.pos[1] = frame[0], frame[1]
        rec.draw(plan, list(range(g.n)), frame, 0)
    finally:
        sys.setrecursionlimit(limit)
    drawing = _as_drawing(rec.pos)
    return make_report(
        g.graph(),
        drawing,
        bound,
        frame_size=L,
        bound_exceeded=L > bound,
        recursion_depth=rec.depth,
        min_frame_height=rec.min_height if math.isfinite(rec.min_height) else None,
    )
