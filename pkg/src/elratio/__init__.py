"""Planar straight-line drawings with small edge-length ratio.

Drawers for plane 3-trees, 2-trees, maximal bipartite plane graphs and
coloring-based proper drawings, together with exact verifiers, generators and
lemma oracles.
"""
from .drawers import (
    DrawReport,
    color_from_drawing,
    decompose_2tree,
    draw_2tree,
    draw_bipartite_maximal,
    draw_by_coloring,
    draw_plane_3tree,
    f_weight,
    l2t_draw,
    l2t_setup,
    L2TParams,
)
from .errors import ElrError
from .generators import (
    gen_balanced_3tree,
    gen_bipartite_maximal,
    gen_linear_2tree,
    gen_lower_bound_graph,
    gen_nested_triangles,
    gen_random_2tree,
    gen_random_3tree,
    gen_random_linear_2tree,
    gen_random_sparse_graph,
)
from .graphs import Drawing, Graph, PlaneGraph, Plane3Tree, TwoTree
from .io import parse_drawing, parse_graph, serialize_drawing, serialize_graph
from .metrics import (
    check_decomposition,
    edge_length_ratio,
    lemma_oracle,
    nested_triangle_perimeters,
    restrict_ratio,
    verify_planar_straightline,
    verify_proper,
)
from .svg import render_svg

__version__ = "0.1.0"
