"""Versioned JSON files for graphs and drawings.

Graph file (``schema: "elratio-graph/1"``)::

    {"schema": "elratio-graph/1",
     "family": "graph" | "plane" | "two-tree" | "plane-3tree" | "bipartite-maximal",
     "n": <int>,
     "edges": [[u, v], ...],            # u < v, sorted
     "rotation": [[...], ...] | null,   # clockwise neighbour lists
     "outer_face": [...] | null,
     "witness": null | {"parents": [[p, q], ...]}        # two-tree
                     | {"insertions": [[a, b, c], ...]}  # plane-3tree
                     | {"script": [["P0", [u, v, w, z]], ["P1", [u, v, w]], ...]}}

Drawing file (``schema: "elratio-drawing/1"``)::

    {"schema": "elratio-drawing/1",
     "graph_hash": "<sha256 of the canonical n + edge list>",
     "coords": [[x, y], ...],   # "p/q" for exact rationals, else 17 significant digits
     "meta": {...}}

The serializer writes one top-level key per line in the order above, so the
output is canonical: ``serialize(parse(text))`` is the canonical form of
``text``.  Errors carry a ``locus`` (``line:col`` for syntax, a field path for
content).
"""
from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction

from .errors import ElrError
from .generators import BipartiteMaximal, gen_bipartite_maximal
from .graphs import Drawing, Graph, PlaneGraph, Plane3Tree, TwoTree, plane3tree_from_insertions

GRAPH_SCHEMA = "elratio-graph/1"
DRAWING_SCHEMA = "elratio-drawing/1"
FAMILIES = ("graph", "plane", "two-tree", "plane-3tree", "bipartite-maximal")


def _fail(kind, msg, locus):
    raise ElrError(kind, f"{locus}: {msg}", locus=locus)


def graph_of(model) -> Graph:
    """The plain ``Graph`` (or ``PlaneGraph``) underlying any model."""
    if isinstance(model, Graph):
        return model
    if isinstance(model, TwoTree):
        return model.graph()
    if isinstance(model, (Plane3Tree, BipartiteMaximal)):
        return model.graph
    raise ElrError("invalid-model", f"unsupported model {type(model).__name__}")


def graph_hash(model) -> str:
    g = graph_of(model)
    text = json.dumps([g.n, [list(e) for e in g.edges]], separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _family(model) -> str:
    if isinstance(model, TwoTree):
        return "two-tree"
    if isinstance(model, Plane3Tree):
        return "plane-3tree"
    if isinstance(model, BipartiteMaximal):
        return "bipartite-maximal"
    if isinstance(model, PlaneGraph):
        return "plane"
    return "graph"


def _dump(fields: list[tuple[str, object]]) -> str:
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in fields]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def serialize_graph(model) -> str:
    g = graph_of(model)
    fam = _family(model)
    witness = None
    if fam == "two-tree":
        witness = {"parents": [list(p) for p in model.parents]}
    elif fam == "plane-3tree":
        witness = {"insertions": [list(f) for f in model.insertions]}
    elif fam == "bipartite-maximal":
        witness = {"script": [[s.op, list(s.args)] for s in model.script]}
    plane = isinstance(g, PlaneGraph)
    return _dump(
        [
            ("schema", GRAPH_SCHEMA),
            ("family", fam),
            ("n", g.n),
            ("edges", [list(e) for e in g.edges]),
            ("rotation", [list(r) for r in g.rotation] if plane else None),
            ("outer_face", list(g.outer_face) if plane else None),
            ("witness", witness),
        ]
    )


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        _fail("parse-error", err.msg, f"line {err.lineno}:{err.colno}")
    if not isinstance(doc, dict):
        _fail("parse-error", "top level must be an object", "$")
    return doc


def _int_list(value, locus, width=None) -> list:
    if not isinstance(value, list):
        _fail("parse-error", "expected an array", locus)
    for i, item in enumerate(value):
        if width is None:
            ok = isinstance(item, int) and not isinstance(item, bool)
        else:
            ok = (
                isinstance(item, list)
                and (width == 0 or len(item) == width)
                and all(isinstance(x, int) and not isinstance(x, bool) for x in item)
            )
        if not ok:
            _fail("parse-error", f"malformed entry {item!r}", f"{locus}[{i}]")
    return value


def _build(locus, fn, *args):
    try:
        return fn(*args)
    except ElrError as err:
        _fail("invariant-violation", str(err), locus)
    except (TypeError, ValueError, IndexError) as err:
        _fail("invariant-violation", str(err), locus)


def parse_graph(text: str):
    """Validated model for a graph file: TwoTree, Plane3Tree, BipartiteMaximal, PlaneGraph or Graph."""
    doc = _load(text)
    if doc.get("schema") != GRAPH_SCHEMA:
        _fail("parse-error", f"unknown schema {doc.get('schema')!r}", "schema")
    fam = doc.get("family")
    if fam not in FAMILIES:
        _fail("parse-error", f"unknown family {fam!r}", "family")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        _fail("parse-error", f"n must be a non-negative integer, got {n!r}", "n")
    edges = [tuple(e) for e in _int_list(doc.get("edges"), "edges", 2)]
    rotation, outer = doc.get("rotation"), doc.get("outer_face")
    witness = doc.get("witness")

    if fam == "graph":
        return _build("edges", Graph, n, tuple(edges))
    if fam == "plane":
        rot = tuple(tuple(r) for r in _int_list(rotation, "rotation", 0))
        face = tuple(_int_list(outer, "outer_face"))
        return _build("rotation", PlaneGraph, n, tuple(edges), rot, face)

    if not isinstance(witness, dict):
        _fail("parse-error", "family needs a construction witness", "witness")
    if fam == "two-tree":
        parents = [tuple(p) for p in _int_list(witness.get("parents"), "witness.parents", 2)]
        model = _build("witness.parents", TwoTree, n, tuple(parents))
    elif fam == "plane-3tree":
        ins = [tuple(f) for f in _int_list(witness.get("insertions"), "witness.insertions", 3)]
        model = _build("witness.insertions", plane3tree_from_insertions, ins)
    else:
        script = witness.get("script")
        if not isinstance(script, list):
            _fail("parse-error", "expected an array", "witness.script")
        for i, item in enumerate(script):
            if not (isinstance(item, list) and len(item) == 2 and item[0] in ("P0", "P1")):
                _fail("parse-error", f"malformed step {item!r}", f"witness.script[{i}]")
            _int_list(item[1], f"witness.script[{i}][1]")
        model = _build("witness.script", gen_bipartite_maximal, [(op, tuple(a)) for op, a in script])

    g = graph_of(model)
    if g.n != n:
        _fail("invariant-violation", f"witness builds {g.n} vertices, file says {n}", "n")
    if set(g.edges) != {tuple(sorted(e)) for e in edges} or len(edges) != len(g.edges):
        _fail("invariant-violation", "edge list disagrees with the witness", "edges")
    if rotation is not None and isinstance(g, PlaneGraph):
        if [list(r) for r in g.rotation] != rotation:
            _fail("invariant-violation", "rotation disagrees with the witness", "rotation")
    if outer is not None and isinstance(g, PlaneGraph) and list(g.outer_face) != outer:
        _fail("invariant-violation", "outer face disagrees with the witness", "outer_face")
    return model


# ---------------------------------------------------------------------------
# drawings


def _coord_text(c) -> str | float:
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else f"{c.numerator}/1"
    return format(float(c), ".17g")


def _coord_value(s, locus):
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        return float(s)
    if not isinstance(s, str):
        _fail("parse-error", f"bad coordinate {s!r}", locus)
    try:
        if "/" in s:
            return Fraction(s)
        value = float(s)
    except (ValueError, ZeroDivisionError):
        _fail("parse-error", f"bad coordinate {s!r}", locus)
    if not math.isfinite(value):
        _fail("parse-error", f"non-finite coordinate {s!r}", locus)
    return value


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items())}
    return v


def serialize_drawing(model, drawing: Drawing, meta: dict | None = None) -> str:
    g = graph_of(model)
    if len(drawing) != g.n:
        raise ElrError("invariant-violation", f"{len(drawing)} points for {g.n} vertices")
    coords = [[_coord_text(x), _coord_text(y)] for x, y in drawing.coords]
    return _dump(
        [
            ("schema", DRAWING_SCHEMA),
            ("graph_hash", graph_hash(g)),
            ("coords", coords),
            ("meta", _jsonable(meta or {})),
        ]
    )


def parse_drawing(text: str, model=None) -> tuple[Drawing, dict]:
    """Drawing and metadata; with ``model`` given, the hash and vertex count are checked."""
    doc = _load(text)
    if doc.get("schema") != DRAWING_SCHEMA:
        _fail("parse-error", f"unknown schema {doc.get('schema')!r}", "schema")
    raw = doc.get("coords")
    if not isinstance(raw, list):
        _fail("parse-error", "expected an array", "coords")
    pts = []
    for i, p in enumerate(raw):
        if not (isinstance(p, list) and len(p) == 2):
            _fail("parse-error", f"malformed point {p!r}", f"coords[{i}]")
        pts.append((_coord_value(p[0], f"coords[{i}][0]"), _coord_value(p[1], f"coords[{i}][1]")))
    meta = doc.get("meta") or {}
    if not isinstance(meta, dict):
        _fail("parse-error", "meta must be an object", "meta")
    if model is not None:
        g = graph_of(model)
        if doc.get("graph_hash") != graph_hash(g):
            _fail("invariant-violation", "drawing belongs to a different graph", "graph_hash")
        if len(pts) != g.n:
            _fail("invariant-violation", f"{len(pts)} points for {g.n} vertices", "coords")
    return Drawing(tuple(pts)), meta
