"""Command-line entry point: ``elratio gen|draw|verify|measure|oracle|render``.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input
errors.  Diagnostics go to stderr as one JSON object per line.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import generators as gen
from .drawers import (
    draw_2tree,
    draw_bipartite_maximal,
    draw_by_coloring,
    draw_plane_3tree,
    decompose_2tree,
)
from .errors import ElrError
from .graphs import Plane3Tree, TwoTree
from .io import graph_of, parse_drawing, parse_graph, serialize_drawing, serialize_graph
from .metrics import (
    check_decomposition,
    edge_length_ratio,
    lemma_oracle,
    nested_triangle_perimeters,
    verify_planar_straightline,
    verify_proper,
)
from .svg import SvgOptions, render_svg

GENERATORS = {
    "nested-triangles": ("k", lambda a: gen.gen_nested_triangles(a.k)),
    "balanced-3tree": ("k", lambda a: gen.gen_balanced_3tree(a.k, seed=a.seed)),
    "lower-bound": ("k", lambda a: gen.gen_lower_bound_graph(a.k)),
    "random-3tree": ("n", lambda a: gen.gen_random_3tree(a.n, seed=a.seed)),
    "random-2tree": ("n", lambda a: gen.gen_random_2tree(a.n, seed=a.seed)),
    "linear-2tree": ("n", lambda a: gen.gen_random_linear_2tree(a.n, seed=a.seed)),
    "bipartite-maximal": ("n", lambda a: gen.gen_bipartite_maximal(n=a.n, seed=a.seed)),
    "sparse": ("n", lambda a: gen.gen_random_sparse_graph(a.n, seed=a.seed)),
}
ALGORITHMS = ("plane-3tree", "two-tree", "bipartite", "coloring")


class UsageError(Exception):
    pass


def _diag(kind: str, message: str, **extra) -> None:
    print(json.dumps({"error": kind, "message": message, **extra}, sort_keys=True), file=sys.stderr)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _epsilon(text: str | None, default: Fraction) -> Fraction:
    if text is None:
        return default
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --epsilon {text!r}") from None


def _load_pair(args):
    model = parse_graph(_read(args.input))
    if not args.drawing:
        raise UsageError("this command needs -d DRAWING")
    drawing, meta = parse_drawing(_read(args.drawing), model)
    return model, drawing, meta


def cmd_gen(args) -> int:
    param, build = GENERATORS[args.family]
    if getattr(args, param) is None:
        raise UsageError(f"{args.family} needs --{param}")
    _write(args.output, serialize_graph(build(args)))
    return 0


def cmd_draw(args) -> int:
    model = parse_graph(_read(args.input))
    algo = args.algorithm
    if algo == "plane-3tree":
        if not isinstance(model, Plane3Tree):
            raise UsageError("plane-3tree needs a plane-3tree graph file")
        report = draw_plane_3tree(model, _epsilon(args.epsilon, Fraction(1, 10)))
    elif algo == "two-tree":
        if not isinstance(model, TwoTree):
            raise UsageError("two-tree needs a two-tree graph file")
        report = draw_2tree(model)
    elif algo == "bipartite":
        if not isinstance(model, gen.BipartiteMaximal):
            raise UsageError("bipartite needs a bipartite-maximal graph file")
        report = draw_bipartite_maximal(model, _epsilon(args.epsilon, Fraction(1, 10)))
    else:
        eps = float(_epsilon(args.epsilon, Fraction(3, 10)))
        report = draw_by_coloring(graph_of(model), eps, seed=args.seed)
    meta = dict(report.meta)
    meta.update(bound=report.theoretical_bound, ratio=report.ratio, algorithm=algo)
    meta.pop("colors", None)
    _write(args.output, serialize_drawing(model, report.drawing, meta))
    return 0


def _report(ok: bool, payload: dict) -> int:
    print(json.dumps({"ok": ok, **payload}, sort_keys=True, default=str))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    what = args.what
    if what == "decomposition":
        model = parse_graph(_read(args.input))
        if not isinstance(model, TwoTree):
            raise UsageError("decomposition needs a two-tree graph file")
        rep = check_decomposition(model, decompose_2tree(model))
        return _report(rep.ok, {"violations": rep.violations[:20], "stats": rep.stats})
    model, drawing, _ = _load_pair(args)
    g = graph_of(model)
    if what == "perimeters":
        trace = nested_triangle_perimeters(g, drawing, gamma=args.gamma)
        return _report(trace.ok, {"perimeters": trace.perimeters, "violations": trace.violations})
    check = verify_planar_straightline if what == "planar" else verify_proper
    rep = check(g, drawing)
    return _report(rep.ok, {"violations": rep.violations[:20], "stats": rep.stats})


def cmd_measure(args) -> int:
    model, drawing, _ = _load_pair(args)
    print(edge_length_ratio(graph_of(model), drawing))
    return 0


def cmd_oracle(args) -> int:
    rep = lemma_oracle(args.which, args.samples, seed=args.seed)
    return _report(rep.ok, {"violations": len(rep.violations), "stats": rep.stats})


def cmd_render(args) -> int:
    model, drawing, _ = _load_pair(args)
    skeleton = frozenset()
    if args.highlight_skeleton:
        if not isinstance(model, TwoTree):
            raise UsageError("--highlight-skeleton needs a two-tree graph file")
        skeleton = decompose_2tree(model).skeleton_edges
    opts = SvgOptions(scale=args.scale, labels=args.labels, skeleton=skeleton)
    _write(args.output, render_svg(graph_of(model), drawing, opts))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elratio", description="Edge-length ratio drawings of planar graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("family", choices=sorted(GENERATORS))
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(run=cmd_gen)

    d = sub.add_parser("draw", help="draw a graph file")
    d.add_argument("algorithm", choices=ALGORITHMS)
    d.add_argument("-i", "--input", required=True)
    d.add_argument("--epsilon", help="rational or decimal, e.g. 1/10 or 0.05")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("-o", "--output")
    d.set_defaults(run=cmd_draw)

    v = sub.add_parser("verify", help="certify a drawing or decomposition")
    v.add_argument("what", choices=("planar", "proper", "decomposition", "perimeters"))
    v.add_argument("-i", "--input", required=True)
    v.add_argument("-d", "--drawing")
    v.add_argument("--gamma", type=float, default=0.3)
    v.set_defaults(run=cmd_verify)

    m = sub.add_parser("measure", help="measure a drawing")
    m.add_argument("quantity", choices=("ratio",))
    m.add_argument("-i", "--input", required=True)
    m.add_argument("-d", "--drawing")
    m.set_defaults(run=cmd_measure)

    o = sub.add_parser("oracle", help="sample the perimeter lemmas")
    o.add_argument("which", choices=("lemma2", "lemma3"))
    o.add_argument("--samples", type=int, default=10_000)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(run=cmd_oracle)

    r = sub.add_parser("render", help="render a drawing as SVG")
    r.add_argument("-i", "--input", required=True)
    r.add_argument("-d", "--drawing", required=True)
    r.add_argument("-o", "--output")
    r.add_argument("--scale", type=float, default=100.0)
    r.add_argument("--labels", action="store_true")
    r.add_argument("--highlight-skeleton", action="store_true")
    r.set_defaults(run=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except UsageError as err:
        _diag("usage", str(err))
        return 2
    except ElrError as err:
        _diag(err.kind, str(err), **{k: str(v) for k, v in err.context.items()})
        if err.kind in ("parse-error", "invariant-violation", "improper-input"):
            return 2
        return 1


if __name__ == "__main__":
    sys.exit(main())
