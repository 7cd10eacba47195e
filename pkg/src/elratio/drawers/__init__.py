"""Drawing algorithms, one module per graph family."""
from .bipartite import draw_bipartite_maximal
from .coloring import (
    TilingColoring,
    color_from_drawing,
    draw_by_coloring,
    is_proper_coloring,
    smallest_last_coloring,
)
from .plane3tree import draw_plane_3tree
from .report import DrawReport
from .twotree import (
    GOLDEN_EXPONENT,
    PHI,
    L2TParams,
    L2TSetup,
    decompose_2tree,
    draw_2tree,
    f_weight,
    l2t_draw,
    l2t_properties,
    l2t_setup,
)

__all__ = [
    "DrawReport",
    "GOLDEN_EXPONENT",
    "L2TParams",
    "L2TSetup",
    "PHI",
    "TilingColoring",
    "color_from_drawing",
    "decompose_2tree",
    "draw_2tree",
    "draw_bipartite_maximal",
    "draw_by_coloring",
    "draw_plane_3tree",
    "f_weight",
    "is_proper_coloring",
    "l2t_draw",
    "l2t_properties",
    "l2t_setup",
    "smallest_last_coloring",
]
