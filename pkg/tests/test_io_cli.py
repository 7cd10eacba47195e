import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elratio.cli import main
from elratio.drawers import draw_2tree, draw_plane_3tree
from elratio.errors import ElrError
from elratio.generators import gen_bipartite_maximal, gen_nested_triangles, gen_random_2tree, gen_random_sparse_graph
from elratio.graphs import Drawing, Graph, PlaneGraph, TwoTree
from elratio.io import graph_hash, parse_drawing, parse_graph, serialize_drawing, serialize_graph
from elratio.metrics import verify_planar_straightline
from elratio.svg import SvgOptions, render_svg

MODELS = [
    TwoTree(3, ((0, 1),)),
    gen_random_2tree(40, seed=1),
    gen_nested_triangles(3),
    gen_bipartite_maximal(n=20, seed=4),
    gen_random_sparse_graph(30, seed=2),
    PlaneGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), ((1, 3), (2, 0), (3, 1), (0, 2)), (0, 3, 2, 1)),
]


@pytest.mark.parametrize("model", MODELS, ids=lambda m: type(m).__name__)
def test_graph_roundtrip(model):
    text = serialize_graph(model)
    again = parse_graph(text)
    assert type(again) is type(model)
    assert serialize_graph(again) == text


def test_triangle_file_family():
    text = serialize_graph(TwoTree(3, ((0, 1),)))
    assert json.loads(text)["family"] == "two-tree"
    assert isinstance(parse_graph(text), TwoTree)


def test_canonical_form_of_reformatted_input():
    text = serialize_graph(gen_random_2tree(12, seed=3))
    messy = json.dumps(json.loads(text), indent=4)
    assert serialize_graph(parse_graph(messy)) == text


def test_non_adjacent_parents():
    doc = json.loads(serialize_graph(TwoTree(5, ((0, 1), (0, 2), (2, 3)))))
    doc["witness"]["parents"][2] = [1, 3]
    with pytest.raises(ElrError) as err:
        parse_graph(json.dumps(doc))
    assert err.value.kind == "invariant-violation"
    assert err.value.context["locus"] == "witness.parents"


def test_edges_must_match_witness():
    doc = json.loads(serialize_graph(gen_random_2tree(8)))
    doc["edges"].pop()
    with pytest.raises(ElrError) as err:
        parse_graph(json.dumps(doc))
    assert err.value.context["locus"] == "edges"


@pytest.mark.parametrize(
    "text,locus",
    [
        ("{not json", "line 1:2"),
        ('{"schema": "other"}', "schema"),
        ('{"schema": "elratio-graph/1", "family": "cube"}', "family"),
        ('{"schema": "elratio-graph/1", "family": "graph", "n": -1}', "n"),
        ('{"schema": "elratio-graph/1", "family": "graph", "n": 2, "edges": [[0]]}', "edges[0]"),
    ],
)
def test_parse_errors_have_locus(text, locus):
    with pytest.raises(ElrError) as err:
        parse_graph(text)
    assert err.value.kind == "parse-error"
    assert err.value.context["locus"] == locus


def test_drawing_roundtrip_exact_and_float():
    t = gen_nested_triangles(5)
    d = draw_plane_3tree(t).drawing
    back, meta = parse_drawing(serialize_drawing(t, d, {"epsilon": Fraction(1, 10)}), t)
    assert back == d
    assert meta["epsilon"] == "1/10"
    f = d.as_float()
    back, _ = parse_drawing(serialize_drawing(t, f), t)
    assert back == f


@given(st.lists(st.tuples(st.floats(-1e300, 1e300), st.floats(-1e300, 1e300)), min_size=1, max_size=20))
def test_float_coordinates_lossless(pts):
    g = Graph(len(pts), ())
    d = Drawing(tuple(pts))
    back, _ = parse_drawing(serialize_drawing(g, d), g)
    assert back == d


def test_drawing_hash_mismatch():
    t = gen_random_2tree(10)
    text = serialize_drawing(t, draw_2tree(t).drawing)
    with pytest.raises(ElrError) as err:
        parse_drawing(text, gen_random_2tree(10, seed=99))
    assert err.value.kind == "invariant-violation"


def test_verdicts_survive_roundtrip():
    t = gen_random_2tree(60, seed=7)
    d = draw_2tree(t).drawing
    back, _ = parse_drawing(serialize_drawing(t, d), t)
    assert verify_planar_straightline(t.graph(), back).ok
    assert graph_hash(t) == graph_hash(t.graph())


# --- SVG -------------------------------------------------------------------


def test_svg_square():
    g = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    svg = render_svg(g, Drawing(((0, 0), (1, 0), (1, 1), (0, 1))))
    assert svg.count("<line") == 4
    assert svg.count("<circle") == 4
    box = svg.split('viewBox="')[1].split('"')[0].split()
    assert box[2] == box[3]
    assert svg == render_svg(g, Drawing(((0, 0), (1, 0), (1, 1), (0, 1))))


def test_svg_skeleton_class():
    from elratio.drawers import decompose_2tree

    t = gen_random_2tree(25, seed=2)
    skel = decompose_2tree(t).skeleton_edges
    svg = render_svg(t.graph(), draw_2tree(t).drawing, SvgOptions(skeleton=frozenset(skel)))
    assert svg.count('class="skeleton"') == len(skel)


def test_svg_improper():
    g = Graph(2, ((0, 1),))
    with pytest.raises(ElrError) as err:
        render_svg(g, Drawing(((0, 0), (0, 0))))
    assert err.value.kind == "improper-input"


# --- CLI -------------------------------------------------------------------


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_pipeline(tmp_path, capsys):
    g, d = str(tmp_path / "g.json"), str(tmp_path / "d.json")
    assert _run(["gen", "nested-triangles", "--k", "4", "-o", g], capsys)[0] == 0
    assert json.loads(open(g).read())["n"] == 12
    assert _run(["draw", "plane-3tree", "-i", g, "-o", d], capsys)[0] == 0
    code, out, _ = _run(["verify", "planar", "-i", g, "-d", d], capsys)
    assert code == 0 and json.loads(out)["ok"]
    assert _run(["verify", "perimeters", "-i", g, "-d", d], capsys)[0] == 0
    svg = str(tmp_path / "g.svg")
    assert _run(["render", "-i", g, "-d", d, "-o", svg], capsys)[0] == 0
    assert open(svg).read().count("<circle") == 12


def test_cli_two_tree(tmp_path, capsys):
    g, d = str(tmp_path / "g.json"), str(tmp_path / "d.json")
    _run(["gen", "random-2tree", "--n", "80", "--seed", "5", "-o", g], capsys)
    assert _run(["draw", "two-tree", "-i", g, "-o", d], capsys)[0] == 0
    assert _run(["verify", "planar", "-i", g, "-d", d], capsys)[0] == 0
    assert _run(["verify", "decomposition", "-i", g], capsys)[0] == 0
    assert _run(["render", "-i", g, "-d", d, "--highlight-skeleton", "-o", str(tmp_path / "s.svg")], capsys)[0] == 0


def test_cli_measure_square(tmp_path, capsys):
    g = PlaneGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), ((1, 3), (2, 0), (3, 1), (0, 2)), (0, 3, 2, 1))
    gp, dp = tmp_path / "g.json", tmp_path / "d.json"
    gp.write_text(serialize_graph(g))
    dp.write_text(serialize_drawing(g, Drawing(((0, 0), (1, 0), (1, 1), (0, 1)))))
    code, out, _ = _run(["measure", "ratio", "-i", str(gp), "-d", str(dp)], capsys)
    assert code == 0 and out.strip() == "1.0"


def test_cli_verification_failure(tmp_path, capsys):
    g = Graph(4, ((0, 2), (1, 3)))
    gp, dp = tmp_path / "g.json", tmp_path / "d.json"
    gp.write_text(serialize_graph(g))
    dp.write_text(serialize_drawing(g, Drawing(((0, 0), (1, 0), (1, 1), (0, 1)))))
    assert _run(["verify", "planar", "-i", str(gp), "-d", str(dp)], capsys)[0] == 1
    assert _run(["verify", "proper", "-i", str(gp), "-d", str(dp)], capsys)[0] == 0


def test_cli_usage_and_parse_errors(tmp_path, capsys):
    assert _run(["draw"], capsys)[0] == 2
    assert _run(["gen", "nested-triangles"], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = _run(["draw", "two-tree", "-i", str(bad)], capsys)
    assert code == 2
    diag = json.loads(err.strip().splitlines()[-1])
    assert diag["error"] == "parse-error" and diag["locus"] == "line 1:2"


def test_cli_oracle(capsys):
    code, out, _ = _run(["oracle", "lemma3", "--samples", "500", "--seed", "1"], capsys)
    assert code == 0 and json.loads(out)["violations"] == 0


def test_cli_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        g, d = str(tmp_path / f"g{i}.json"), str(tmp_path / f"d{i}.json")
        _run(["gen", "bipartite-maximal", "--n", "25", "--seed", "3", "-o", g], capsys)
        _run(["draw", "bipartite", "-i", g, "--epsilon", "1/20", "-o", d], capsys)
        outs.append((open(g).read(), open(d).read()))
    assert outs[0] == outs[1]
