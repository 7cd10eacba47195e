import pytest
from hypothesis import given
from hypothesis import strategies as st

from elratio.errors import ElrError
from elratio.generators import (
    gen_balanced_3tree,
    gen_bipartite_maximal,
    gen_linear_2tree,
    gen_lower_bound_graph,
    gen_nested_triangles,
    gen_random_2tree,
    gen_random_3tree,
    gen_random_linear_2tree,
    gen_random_sparse_graph,
    nested_rings,
)
from elratio.graphs import (
    Graph,
    PlaneGraph,
    TwoTree,
    classify_linear,
    h_components,
    is_linear_2tree,
    nontrivial_chain,
    rep_tree_depth,
)


def test_graph_rejects_bad_edges():
    with pytest.raises(ElrError):
        Graph(3, ((0, 0),))
    with pytest.raises(ElrError):
        Graph(3, ((0, 1), (1, 0)))
    with pytest.raises(ElrError):
        Graph(2, ((0, 5),))


def test_plane_graph_square_faces():
    g = PlaneGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), ((1, 3), (2, 0), (3, 1), (0, 2)), (0, 3, 2, 1))
    assert len(g.faces()) == 2
    assert len(g.internal_faces()) == 1


def test_plane_graph_rejects_nonplanar_rotation():
    # K4 with a rotation system of genus 1
    edges = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    rot = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
    with pytest.raises(ElrError) as err:
        PlaneGraph(4, edges, rot)
    assert err.value.kind == "invariant-violation"


def test_two_tree_rejects_non_adjacent_parents():
    TwoTree(5, ((0, 1), (0, 2), (2, 3)))
    with pytest.raises(ElrError) as err:
        TwoTree(5, ((0, 1), (0, 2), (1, 3)))  # vertex 3 hangs on (0, 2), so 1 and 3 are not adjacent
    assert err.value.kind == "invalid-parents"


def test_triangle_two_tree():
    t = TwoTree(3, ((0, 1),))
    assert t.edges == ((0, 1), (0, 2), (1, 2))
    assert is_linear_2tree(t)
    assert nontrivial_chain(t) == [(0, 1)]
    assert classify_linear(t) == [1, 2, 3]


@given(st.integers(2, 300), st.integers(0, 10**6))
def test_random_2tree_counts(n, seed):
    t = gen_random_2tree(n, seed)
    assert t.n == n
    assert len(t.edges) == 2 * n - 3


@given(st.integers(2, 200), st.integers(0, 10**6))
def test_random_linear_2tree_is_linear(n, seed):
    t = gen_random_linear_2tree(n, seed)
    assert t.n == n and is_linear_2tree(t)
    cls = classify_linear(t)
    assert all(cls[u] != cls[v] for u, v in t.edges)


def test_linear_profile_chain_length():
    t = gen_linear_2tree([2, 1, 3])
    assert t.n == 8
    assert len(nontrivial_chain(t)) == 3


def test_fan_is_not_linear():
    # two apexes on (0, 1), each carrying a further apex on a side edge of (0,1)
    t = TwoTree(6, ((0, 1), (0, 1), (0, 2), (0, 3)))
    assert not is_linear_2tree(t)
    with pytest.raises(ElrError):
        classify_linear(t)


def test_h_components_partition():
    t = gen_random_2tree(60, seed=4)
    d = h_components(t, [(0, 1)])
    inner = [v for c in d.components for v in c.vertex_map[2:]]
    assert sorted(inner + list(d.skeleton_map)) == list(range(60))


@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_nested_triangles_shape(k):
    t = gen_nested_triangles(k)
    assert t.n == 3 * k
    assert len(t.graph.edges) == 3 * t.n - 6
    assert rep_tree_depth(t) == 3 * k - 2
    assert len(nested_rings(k)) == k


def test_lower_bound_graph_size():
    g = gen_lower_bound_graph(4)
    assert g.n == 6 * 4 - 2


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_balanced_3tree_depth(d):
    t = gen_balanced_3tree(d, seed=1)
    assert rep_tree_depth(t) == d
    assert t.n == 3 + (3 ** (d - 1) - 1) // 2


@given(st.integers(3, 120), st.integers(0, 1000))
def test_random_3tree_is_maximal_planar(n, seed):
    t = gen_random_3tree(n, seed)
    assert len(t.graph.edges) == 3 * n - 6
    assert len(t.graph.faces()) == 2 * n - 4


@given(st.integers(4, 120), st.integers(0, 1000))
def test_bipartite_maximal_is_quadrangulation(n, seed):
    bm = gen_bipartite_maximal(n=n, seed=seed)
    g = bm.graph
    assert g.n == n and len(g.edges) == 2 * n - 4
    assert all(len(f) == 4 for f in g.faces())
    side = [None] * n
    side[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if side[u] is None:
                side[u] = 1 - side[v]
                stack.append(u)
            assert side[u] != side[v]


def test_bipartite_script_replay():
    bm = gen_bipartite_maximal(n=30, seed=2)
    again = gen_bipartite_maximal(script=[(s.op, s.args) for s in bm.script])
    assert again.graph == bm.graph


def test_bipartite_bad_op():
    with pytest.raises(ElrError) as err:
        gen_bipartite_maximal(script=[("P0", (0, 2, 1, 3))])
    assert err.value.kind == "invalid-op"


def test_sparse_graph_deterministic():
    assert gen_random_sparse_graph(50, seed=3) == gen_random_sparse_graph(50, seed=3)
    assert gen_random_sparse_graph(50, seed=3).n == 50


@pytest.mark.parametrize("fn,arg", [(gen_nested_triangles, 0), (gen_random_2tree, 1), (gen_balanced_3tree, 0)])
def test_invalid_sizes(fn, arg):
    with pytest.raises(ElrError) as err:
        fn(arg)
    assert err.value.kind == "invalid-size"
