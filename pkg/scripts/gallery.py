"""Render a small gallery of SVG drawings into a directory.

    python3 scripts/gallery.py --out gallery/
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from elratio import (
    decompose_2tree,
    draw_2tree,
    draw_bipartite_maximal,
    draw_by_coloring,
    draw_plane_3tree,
    gen_bipartite_maximal,
    gen_nested_triangles,
    gen_random_2tree,
    gen_random_sparse_graph,
    render_svg,
)
from elratio.svg import SvgOptions


@dataclass(frozen=True)
class GalleryConfig:
    out: Path = Path("gallery")
    seed: int = 1
    labels: bool = False


def build(cfg: GalleryConfig) -> list[Path]:
    cfg.out.mkdir(parents=True, exist_ok=True)
    written = []

    def save(name, g, drawing, **opts):
        path = cfg.out / f"{name}.svg"
        path.write_text(render_svg(g, drawing, SvgOptions(labels=cfg.labels, **opts)), encoding="utf-8")
        written.append(path)

    nested = gen_nested_triangles(5)
    save("nested_triangles_k5", nested.graph, draw_plane_3tree(nested, Fraction(1, 10)).drawing)

    tt = gen_random_2tree(60, seed=cfg.seed)
    skeleton = frozenset(decompose_2tree(tt).skeleton_edges)
    save("two_tree_60", tt.graph(), draw_2tree(tt).drawing, skeleton=skeleton)

    bm = gen_bipartite_maximal(n=40, seed=cfg.seed)
    save("bipartite_40", bm.graph, draw_bipartite_maximal(bm, Fraction(1, 5)).drawing.as_float())

    sp = gen_random_sparse_graph(40, seed=cfg.seed, neighbours=3)
    save("coloring_40", sp, draw_by_coloring(sp, 0.3, seed=cfg.seed).drawing)
    return written


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", type=Path, default=Path("gallery"))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--labels", action="store_true")
    a = p.parse_args(argv)
    for path in build(GalleryConfig(a.out, a.seed, a.labels)):
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
