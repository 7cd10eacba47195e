"""Measurement and certification of drawings and decompositions."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import ElrError
from .geometry import PointTable, orient, perimeter, point_in_triangle, segments_conflict
from .graphs import Decomposition, Drawing, Graph, TwoTree, is_linear_2tree, norm_edge

REL_TOL = 1e-9


@dataclass
class VerifyReport:
    ok: bool
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @classmethod
    def from_violations(cls, violations, **stats) -> VerifyReport:
        return cls(not violations, list(violations), dict(stats))


def edge_lengths(g, drawing: Drawing) -> np.ndarray:
    out = np.empty(len(g.edges))
    c = drawing.coords
    for i, (u, v) in enumerate(g.edges):
        # differences are taken exactly before rounding
        out[i] = math.hypot(float(c[v][0] - c[u][0]), float(c[v][1] - c[u][1]))
    return out


def edge_length_ratio(g, drawing: Drawing) -> float:
    """Longest edge length over shortest edge length."""
    if not g.edges:
        raise ElrError("no-edges", "ratio undefined for an edgeless graph")
    lens = edge_lengths(g, drawing)
    if lens.min() == 0:
        raise ElrError("degenerate-edge", "zero-length edge")
    return float(lens.max() / lens.min())


def length_stats(g, drawing: Drawing) -> dict:
    if not g.edges:
        return {"min_len": None, "max_len": None, "ratio": None}
    lens = edge_lengths(g, drawing)
    lo, hi = float(lens.min()), float(lens.max())
    return {"min_len": lo, "max_len": hi, "ratio": hi / lo if lo > 0 else math.inf}


def _coincidences(drawing: Drawing) -> list:
    groups = defaultdict(list)
    for v, p in enumerate(drawing.coords):
        groups[(p[0], p[1])].append(v)
    return [("coincident-vertices", tuple(vs)) for vs in groups.values() if len(vs) > 1]


def _margin(P: np.ndarray) -> float:
    return 8 * 2.0**-52 * (float(np.abs(P).max()) if P.size else 0.0) + 1e-300


def _vertex_on_edge(g, drawing: Drawing, pts: PointTable) -> list:
    P = pts.approx
    E = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
    if not len(E):
        return []
    mg = _margin(P)
    order = np.argsort(P[:, 0], kind="stable")
    xs = P[order, 0]
    out = []
    for u, v in E:
        x0, x1 = sorted((P[u, 0], P[v, 0]))
        y0, y1 = sorted((P[u, 1], P[v, 1]))
        lo = np.searchsorted(xs, x0 - mg, "left")
        hi = np.searchsorted(xs, x1 + mg, "right")
        cand = order[lo:hi]
        cand = cand[(P[cand, 1] >= y0 - mg) & (P[cand, 1] <= y1 + mg) & (cand != u) & (cand != v)]
        if not cand.size:
            continue
        o = pts.orient(np.full(cand.size, u), np.full(cand.size, v), cand)
        for w in cand[o == 0]:
            c = drawing.coords
            if _in_box(c[w], c[u], c[v]):
                out.append(("vertex-on-edge", (int(w), (int(u), int(v)))))
    return out


def _in_box(p, a, b) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _edge_crossings(g, drawing: Drawing, pts: PointTable) -> list:
    P = pts.approx
    E = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
    m = len(E)
    if m < 2:
        return []
    mg = _margin(P)
    X = P[E][:, :, 0]
    Y = P[E][:, :, 1]
    xmin, xmax = X.min(1), X.max(1)
    ymin, ymax = Y.min(1), Y.max(1)
    eo = np.argsort(xmin, kind="stable")
    xs = xmin[eo]
    c = drawing.coords
    out = []
    for idx in range(m):
        i = eo[idx]
        hi = np.searchsorted(xs, xmax[i] + mg, "right")
        cand = eo[idx + 1 : hi]
        if not cand.size:
            continue
        cand = cand[(ymin[cand] <= ymax[i] + mg) & (ymax[cand] >= ymin[i] - mg)]
        if not cand.size:
            continue
        a, b = E[i]
        cc, dd = E[cand, 0], E[cand, 1]
        shared = (cc == a) | (cc == b) | (dd == a) | (dd == b)
        # pairs sharing a vertex only conflict when collinear and overlapping
        sh = cand[shared]
        if sh.size:
            s0, s1 = E[sh, 0], E[sh, 1]
            x = np.where((s0 == a) | (s0 == b), s0, s1)
            w = np.where(x == s0, s1, s0)
            u = np.where(x == a, b, a)
            o = pts.orient(x, u, w)
            for t in np.flatnonzero(o == 0):
                j = sh[t]
                if segments_conflict((c[a], c[b]), (c[E[j, 0]], c[E[j, 1]])):
                    out.append(("edge-overlap", ((int(a), int(b)), (int(E[j, 0]), int(E[j, 1])))))
        ns = cand[~shared]
        if ns.size:
            c0, d0 = E[ns, 0], E[ns, 1]
            A = np.full(ns.size, a)
            B = np.full(ns.size, b)
            o1 = pts.orient(A, B, c0)
            o2 = pts.orient(A, B, d0)
            o3 = pts.orient(c0, d0, A)
            o4 = pts.orient(c0, d0, B)
            proper = (o1 * o2 < 0) & (o3 * o4 < 0)
            degen = (o1 == 0) | (o2 == 0) | (o3 == 0) | (o4 == 0)
            for t in np.flatnonzero(proper | degen):
                j = ns[t]
                if proper[t] or segments_conflict((c[a], c[b]), (c[E[j, 0]], c[E[j, 1]])):
                    out.append(("edge-crossing", ((int(a), int(b)), (int(E[j, 0]), int(E[j, 1])))))
    return out


def verify_proper(g, drawing: Drawing) -> VerifyReport:
    """Distinct vertex points and no vertex on a non-incident edge; crossings allowed."""
    if len(drawing) != g.n:
        return VerifyReport(False, [("missing-vertices", (len(drawing), g.n))])
    pts = PointTable(drawing.coords)
    viol = _coincidences(drawing) + _vertex_on_edge(g, drawing, pts)
    return VerifyReport.from_violations(viol, **length_stats(g, drawing))


def verify_planar_straightline(g, drawing: Drawing) -> VerifyReport:
    """Exact planarity certificate: proper, and no two edges meet off a shared endpoint."""
    if len(drawing) != g.n:
        return VerifyReport(False, [("missing-vertices", (len(drawing), g.n))])
    pts = PointTable(drawing.coords)
    viol = _coincidences(drawing) + _vertex_on_edge(g, drawing, pts)
    viol += _edge_crossings(g, drawing, pts)
    return VerifyReport.from_violations(viol, **length_stats(g, drawing))


def restrict_ratio(g, drawing: Drawing, edges) -> float:
    """Ratio of the drawing restricted to a subset of the edges."""
    return edge_length_ratio(Graph(g.n, tuple(norm_edge(*e) for e in edges)), drawing)


# ---------------------------------------------------------------------------
# nested triangles


@dataclass
class PerimeterTrace:
    perimeters: list[float]
    gamma: float = 0.3
    violations: list = field(default_factory=list)
    scale: float = 1.0

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def gaps(self) -> list[float]:
        p = self.perimeters
        return [p[i] - p[i - 1] for i in range(1, len(p))]

    @property
    def implied_ratio_lower_bound(self) -> float:
        # the longest side of the outer triangle is at least a third of its perimeter
        return self.perimeters[-1] / 3


def nested_triangle_perimeters(g, drawing: Drawing, normalize: bool = True, gamma: float = 0.3):
    """Perimeters of the rings of a nested-triangles drawing, innermost first.

    Checks the drawing has the outer ring on the outer face, then the perimeter
    growth: the first ring at least 3 and every further ring at least ``gamma``
    longer (after scaling the shortest edge to 1 when ``normalize``).
    """
    from .generators import gen_nested_triangles, nested_rings

    if g.n % 3 or g.n == 0:
        raise ElrError("not-nested-triangles", f"{g.n} vertices")
    k = g.n // 3
    if set(g.edges) != set(gen_nested_triangles(k).graph.edges):
        raise ElrError("not-nested-triangles", "edge set differs from G_k")
    c = drawing.coords
    viol = []
    outer = tuple(c[v] for v in (0, 1, 2))
    if orient(*outer) == 0:
        viol.append(("degenerate-outer", (0, 1, 2)))
    else:
        for v in range(3, g.n):
            if not point_in_triangle(c[v], outer, strict=True):
                viol.append(("outer-face-not-Ck", v))
    scale = 1.0
    if normalize:
        scale = 1.0 / float(edge_lengths(g, drawing).min())
    per = [perimeter(tuple(c[v] for v in ring)) * scale for ring in nested_rings(k)]
    if per[0] < 3 * (1 - REL_TOL):
        viol.append(("first-perimeter", per[0]))
    for i in range(1, k):
        if per[i] - per[i - 1] < gamma - REL_TOL * per[i]:
            viol.append(("perimeter-gap", (i + 1, per[i] - per[i - 1])))
    return PerimeterTrace(per, gamma, viol, scale)


# ---------------------------------------------------------------------------
# decompositions


def lemma4_bounds(n: int, x: int, y: int, z: int) -> bool:
    """z <= n/2 and the (x, y) disjunction, in integer arithmetic."""
    return 2 * z <= n and (
        (2 * x <= n and 2 * y <= n - x) or (2 * y <= n and 2 * x <= n - y)
    )


def check_decomposition(g: TwoTree, d: Decomposition) -> VerifyReport:
    viol = []
    if not is_linear_2tree(d.skeleton):
        viol.append(("skeleton-not-linear", None))
    if tuple(d.skeleton_map[:2]) != (0, 1):
        viol.append(("skeleton-root", tuple(d.skeleton_map[:2])))
    gedges = set(g.edges)
    skel = d.skeleton_edges
    if not skel <= gedges:
        viol.append(("skeleton-not-subgraph", sorted(skel - gedges)[:5]))
    skel_verts = set(d.skeleton_map)
    seen = set(skel_verts)
    roots = set()
    for comp in d.components:
        r = norm_edge(*comp.root)
        if r not in skel:
            viol.append(("component-root-not-skeleton", comp.root))
        if r in roots:
            viol.append(("duplicate-component-root", comp.root))
        roots.add(r)
        vm = comp.vertex_map
        if tuple(vm[:2]) != tuple(comp.root):
            viol.append(("component-root-mismatch", comp.root))
        inner = set(vm[2:])
        if inner & seen:
            viol.append(("components-overlap", sorted(inner & seen)[:5]))
        seen |= inner
        mapped = {norm_edge(vm[u], vm[v]) for u, v in comp.tree.edges}
        members = set(vm)
        induced = {r} if r in gedges else set()
        for w in members - {0, 1}:
            induced.update(norm_edge(p, w) for p in g.parent_pair(w) if p in members)
        if mapped - gedges:
            viol.append(("component-not-subgraph", comp.root))
        elif mapped != induced:
            viol.append(("component-not-induced", comp.root))
        cu, cv = d.vertex_classes.get(vm[0]), d.vertex_classes.get(vm[1])
        if cu is None or cv is None or f"{min(cu, cv)}-{max(cu, cv)}" != comp.root_class:
            viol.append(("component-class", comp.root))
    if seen != set(range(g.n)):
        viol.append(("vertex-partition", sorted(set(range(g.n)) - seen)[:5]))
    for u, v in skel:
        if d.vertex_classes.get(u) == d.vertex_classes.get(v):
            viol.append(("skeleton-coloring", (u, v)))
    sizes = d.max_sizes()
    x, y, z = sizes["1-3"], sizes["2-3"], sizes["1-2"]
    n = g.n - 1
    # the triangle (N = 3) is the one 2-tree where the bounds cannot hold
    if g.n >= 4 and not lemma4_bounds(n, x, y, z):
        viol.append(("lemma4-bounds", {"n": n, "x": x, "y": y, "z": z}))
    if d.designated:
        des = {norm_edge(*e) for e in d.designated}
        nontrivial = [c for c in d.components if c.size > 2]
        for comp in nontrivial:
            if norm_edge(*comp.root) in des:
                viol.append(("P1", comp.root))
        sides = {norm_edge(*s) for e in des for s in g.side_edges(e)}
        for comp in nontrivial:
            if norm_edge(*comp.root) not in sides:
                viol.append(("P2", comp.root))
    return VerifyReport.from_violations(viol, n=n, x=x, y=y, z=z)


# ---------------------------------------------------------------------------
# randomized oracles for the two triangle lemmata


def _angle_at(a, b, c) -> float:
    """Angle at a of triangle abc, degrees."""
    v1 = (b[0] - a[0], b[1] - a[1])
    v2 = (c[0] - a[0], c[1] - a[1])
    return math.degrees(
        math.atan2(abs(v1[0] * v2[1] - v1[1] * v2[0]), v1[0] * v2[0] + v1[1] * v2[1])
    )


def lemma_hypotheses(which: str, a, b, c, d) -> bool:
    """Exact check of the configuration assumptions (d outside abc, a in bcd or on bd/cd)."""
    if orient(a, b, c) == 0 or orient(b, c, d) == 0:
        return False
    if point_in_triangle(d, (a, b, c), strict=False):
        return False
    inside = point_in_triangle(a, (b, c, d), strict=True)
    on_bd = orient(b, d, a) == 0 and _strictly_between(a, b, d)
    on_cd = orient(c, d, a) == 0 and _strictly_between(a, c, d)
    if not (inside or on_bd or on_cd):
        return False
    if which == "lemma3":
        ad2 = (Fraction(d[0]) - Fraction(a[0])) ** 2 + (Fraction(d[1]) - Fraction(a[1])) ** 2
        dot = (Fraction(b[0]) - Fraction(a[0])) * (Fraction(c[0]) - Fraction(a[0])) + (
            Fraction(b[1]) - Fraction(a[1])
        ) * (Fraction(c[1]) - Fraction(a[1]))
        return ad2 >= 1 and dot >= 0  # angle at a <= 90 degrees
    return True


def _strictly_between(p, a, b) -> bool:
    if (p[0], p[1]) in ((a[0], a[1]), (b[0], b[1])):
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _hp_perimeter(pts) -> mpmath.mpf:
    with mpmath.workdps(60):
        tot = mpmath.mpf(0)
        for i in range(3):
            p, q = pts[i], pts[(i + 1) % 3]
            dx = _mpf_frac(Fraction(q[0]) - Fraction(p[0]))
            dy = _mpf_frac(Fraction(q[1]) - Fraction(p[1]))
            tot += mpmath.sqrt(dx * dx + dy * dy)
        return tot


def lemma_gap(a, b, c, d) -> float:
    """p(bcd) - p(abc)."""
    return perimeter((b, c, d)) - perimeter((a, b, c))


def lemma_conclusion(which: str, a, b, c, d) -> bool:
    need = 1 if which == "lemma3" else 0
    gap = lemma_gap(a, b, c, d)
    scale = perimeter((b, c, d))
    if abs(gap - need) > 1e-9 * scale:
        return gap > need
    with mpmath.workdps(60):
        return _hp_perimeter((b, c, d)) - _hp_perimeter((a, b, c)) > need


def _mpf_frac(x) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)


def lemma_oracle(which: str, samples: int, seed: int = 0, max_rejections: int = 10**7) -> VerifyReport:
    """Rejection-sample configurations meeting the lemma's hypotheses and test its conclusion.

    Points are uniform in [-10, 10]^2.  A quarter of the samples put ``a`` in
    the interior of bd or cd (as an exact rational point), the rest inside bcd.
    """
    if which not in ("lemma2", "lemma3"):
        raise ElrError("invalid-oracle", which)
    if samples < 1:
        raise ElrError("invalid-size", "samples must be >= 1")
    rng = np.random.default_rng(seed)
    violations = []
    done = rejected = 0
    n_segment = samples // 4
    while done < samples - n_segment:
        batch = 4096
        pts = rng.uniform(-10, 10, size=(batch, 4, 2))
        a, b, c, d = (pts[:, i] for i in range(4))
        ok = _inside_batch(a, b, c, d)
        if which == "lemma3":
            ok &= (((d - a) ** 2).sum(1) >= 1.0 + 1e-12)
            ok &= (((b - a) * (c - a)).sum(1) > 1e-9)
        idx = np.flatnonzero(ok)
        rejected += batch - idx.size
        for t in idx:
            if done >= samples - n_segment:
                break
            cfg = tuple(tuple(map(float, p)) for p in (a[t], b[t], c[t], d[t]))
            if not lemma_hypotheses(which, *cfg):
                rejected += 1
                continue
            done += 1
            if not lemma_conclusion(which, *cfg):
                violations.append((which, cfg))
        if rejected > max_rejections:
            raise ElrError("rejection-cap", f"{rejected} rejections")
    while done < samples:
        b, c, d = (tuple(map(float, rng.uniform(-10, 10, 2))) for _ in range(3))
        t = Fraction(int(rng.integers(1, 2**30)), 2**30)
        end = b if rng.random() < 0.5 else c
        a = tuple(Fraction(end[i]) + t * (Fraction(d[i]) - Fraction(end[i])) for i in range(2))
        if which == "lemma3" and not _lemma3_maybe(a, b, c, d):
            rejected += 1
            continue
        if not lemma_hypotheses(which, a, b, c, d):
            rejected += 1
            if rejected > max_rejections:
                raise ElrError("rejection-cap", f"{rejected} rejections")
            continue
        done += 1
        if not lemma_conclusion(which, a, b, c, d):
            violations.append((which, (a, b, c, d)))
    return VerifyReport.from_violations(violations, samples=done, rejections=rejected)


def _lemma3_maybe(a, b, c, d) -> bool:
    """Float screen for the extra lemma-3 assumptions; False only when they clearly fail."""
    ax, ay = float(a[0]), float(a[1])
    ad2 = (d[0] - ax) ** 2 + (d[1] - ay) ** 2
    dot = (b[0] - ax) * (c[0] - ax) + (b[1] - ay) * (c[1] - ay)
    return ad2 > 1 - 1e-9 and dot > -1e-9


def _inside_batch(a, b, c, d) -> np.ndarray:
    """a strictly inside bcd with a comfortable float margin (ambiguous ones are rejected)."""

    def det(p, q, r):
        return (q[:, 0] - p[:, 0]) * (r[:, 1] - p[:, 1]) - (q[:, 1] - p[:, 1]) * (r[:, 0] - p[:, 0])

    o = det(b, c, d)
    s1, s2, s3 = det(b, c, a) * np.sign(o), det(c, d, a) * np.sign(o), det(d, b, a) * np.sign(o)
    tol = 1e-9
    return (np.abs(o) > tol) & (s1 > tol) & (s2 > tol) & (s3 > tol) & (np.abs(det(a, b, c)) > tol)
