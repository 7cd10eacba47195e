"""Measured edge-length ratios against the proven bounds, one CSV row per instance.

    python3 scripts/ratio_sweep.py --family two-tree --sizes 10 100 1000 --seeds 5
    python3 scripts/ratio_sweep.py --family plane-3tree --sizes 1 2 3 4 5 6
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from elratio import (
    draw_2tree,
    draw_bipartite_maximal,
    draw_plane_3tree,
    gen_balanced_3tree,
    gen_bipartite_maximal,
    gen_nested_triangles,
    gen_random_2tree,
    verify_planar_straightline,
)
from elratio.io import graph_of


@dataclass
class SweepConfig:
    family: str = "two-tree"
    sizes: list[int] = field(default_factory=lambda: [10, 100, 500])
    seeds: int = 3
    epsilon: str = "1/10"
    verify: bool = True


@dataclass
class Row:
    family: str
    size: int
    seed: int
    n: int
    ratio: float
    bound: float
    draw_s: float
    planar: bool | None


def _instances(cfg: SweepConfig):
    eps = Fraction(cfg.epsilon)
    for size in cfg.sizes:
        for seed in range(cfg.seeds):
            if cfg.family == "two-tree":
                model = gen_random_2tree(size, seed=seed)
                yield size, seed, model, lambda m: draw_2tree(m)
            elif cfg.family == "nested":
                yield size, 0, gen_nested_triangles(size), lambda m: draw_plane_3tree(m, eps)
                break
            elif cfg.family == "plane-3tree":
                yield size, seed, gen_balanced_3tree(size, seed=seed), lambda m: draw_plane_3tree(m, eps)
            elif cfg.family == "bipartite":
                model = gen_bipartite_maximal(n=size, seed=seed)
                yield size, seed, model, lambda m: draw_bipartite_maximal(m, eps)
            else:
                raise SystemExit(f"unknown family {cfg.family}")


def run(cfg: SweepConfig) -> list[Row]:
    rows = []
    for size, seed, model, draw in _instances(cfg):
        start = time.perf_counter()
        rep = draw(model)
        elapsed = time.perf_counter() - start
        g = graph_of(model)
        planar = verify_planar_straightline(g, rep.drawing).ok if cfg.verify else None
        rows.append(Row(cfg.family, size, seed, g.n, rep.ratio, rep.theoretical_bound, elapsed, planar))
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--family", choices=("two-tree", "nested", "plane-3tree", "bipartite"), default="two-tree")
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 500])
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--epsilon", default="1/10")
    p.add_argument("--no-verify", action="store_true")
    a = p.parse_args(argv)
    cfg = SweepConfig(a.family, a.sizes, a.seeds, a.epsilon, not a.no_verify)
    rows = run(cfg)
    w = csv.DictWriter(sys.stdout, fieldnames=list(asdict(rows[0])))
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
    return 0


if __name__ == "__main__":
    sys.exit(main())
