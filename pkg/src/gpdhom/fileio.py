"""JSON input formats for groupoids, chains, actions, graphs and complexes.

All identifiers are case-sensitive strings.  Parse errors raise
InputError with enough context to locate the offending field.
"""

from __future__ import annotations

import json

from .abelian import IntMatrix
from .chains import Chain, Cochain, Ring, Z
from .delta import Aggregation, DeltaComplex, Edge, Face
from .groupoid import FiniteGroupoid, GroupoidHom, validate_groupoid
from .sft import validate_adjacency
from .znaction import ZNAction, check_cocycle, validate_action


class InputError(ValueError):
    """Malformed input file."""


def _require(mapping, key, where):
    if key not in mapping:
        raise InputError(f"{where}: missing field {key!r}")
    return mapping[key]


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: invalid JSON ({exc.msg})") from exc


def parse_ring(text):
    if text is None:
        return Z
    text = str(text).strip().lower()
    if text == "z":
        return Z
    if text.startswith("z/"):
        try:
            k = int(text[2:])
        except ValueError:
            k = 0
        if k >= 2:
            return Ring.mod(k)
    raise InputError(f"ring must be 'z' or 'z/<k>' with k >= 2, got {text!r}")


def groupoid_from_dict(data, where="groupoid"):
    morphisms = _require(data, "morphisms", where)
    units = _require(data, "units", where)
    source = _require(data, "source", where)
    range_ = _require(data, "range", where)
    compose = _require(data, "compose", where)
    if isinstance(compose, dict):
        raise InputError(f"{where}: compose must be a list of [g, h, gh] triples")
    triples = []
    for k, item in enumerate(compose):
        if len(item) != 3:
            raise InputError(f"{where}: compose[{k}] is not a [g, h, gh] triple")
        triples.append(tuple(item))
    inverse = data.get("inverse")
    return validate_groupoid(morphisms, units, source, range_,
                             {(g, h): gh for g, h, gh in triples}, inverse)


def load_groupoid(path):
    return groupoid_from_dict(load_json(path), where=path)


def chain_from_dict(groupoid, data, where="chain"):
    degree = int(_require(data, "degree", where))
    ring = parse_ring(data.get("ring", "z"))
    values = []
    for k, item in enumerate(_require(data, "values", where)):
        if len(item) != 2:
            raise InputError(f"{where}: values[{k}] is not a [string, coeff] pair")
        key, coeff = item
        values.append((tuple(key), int(coeff)))
    try:
        return Chain(groupoid, degree, values, ring)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def cochain_from_dict(groupoid, data, where="cochain"):
    degree = int(_require(data, "degree", where))
    ring = parse_ring(data.get("ring", "z"))
    default = int(data.get("default", 0))
    table = {}
    for k, item in enumerate(data.get("values", [])):
        if len(item) != 2:
            raise InputError(f"{where}: values[{k}] is not a [string, coeff] pair")
        key, coeff = item
        table[tuple(key)] = int(coeff)
    nerve = groupoid.nerve(degree)
    vec = [default] * len(nerve)
    for key, coeff in table.items():
        if key not in nerve.index:
            raise InputError(f"{where}: {key} is not a composable {degree}-string")
        vec[nerve.index[key]] = coeff
    try:
        return Cochain(groupoid, degree, vec, ring)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def load_chain(groupoid, path):
    return chain_from_dict(groupoid, load_json(path), where=path)


def load_cochain(groupoid, path):
    return cochain_from_dict(groupoid, load_json(path), where=path)


def load_hom(domain, codomain, path):
    data = load_json(path)
    mapping = _require(data, "map", path)
    try:
        return GroupoidHom(domain, codomain, mapping)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_action(path):
    data = load_json(path)
    n = int(_require(data, "N", path))
    points = _require(data, "points", path)
    raw_gens = _require(data, "generators", path)
    index = {p: i for i, p in enumerate(points)}
    gens = []
    for k, g in enumerate(raw_gens):
        if len(g) != len(points):
            raise InputError(f"{path}: generators[{k}] has wrong length")
        try:
            gens.append([index[p] for p in g])
        except KeyError as exc:
            raise InputError(f"{path}: generators[{k}] mentions unknown point "
                             f"{exc.args[0]!r}") from exc
    action = validate_action(n, points, gens)
    cocycles = []
    for k, entry in enumerate(data.get("cocycles", [])):
        tables = _require(entry, "xi", f"{path}: cocycles[{k}]")
        if len(tables) != n or any(len(t) != len(points) for t in tables):
            raise InputError(f"{path}: cocycles[{k}] needs {n} tables "
                             f"of {len(points)} integers")
        cocycles.append(check_cocycle(action, [[int(v) for v in t] for t in tables]))
    return action, cocycles


def load_adjacency(path):
    data = load_json(path)
    matrix = _require(data, "matrix", path)
    return validate_adjacency(matrix, data.get("vertices"))


def delta_from_dict(data, where="complex"):
    vertices = _require(data, "vertices", where)
    edges = []
    for k, e in enumerate(_require(data, "edges", where)):
        edges.append(Edge(_require(e, "id", f"{where}: edges[{k}]"),
                          _require(e, "tail", f"{where}: edges[{k}]"),
                          _require(e, "head", f"{where}: edges[{k}]")))
    faces = []
    for k, f in enumerate(_require(data, "faces", where)):
        w = f"{where}: faces[{k}]"
        v = _require(f, "v", w)
        if len(v) != 3:
            raise InputError(f"{w}: vertex triple must have 3 entries")
        faces.append(Face(_require(f, "id", w), tuple(v),
                          _require(f, "e01", w), _require(f, "e12", w),
                          _require(f, "e02", w),
                          int(f.get("s01", 1)), int(f.get("s12", 1)),
                          int(f.get("s02", 1))))
    try:
        complex_ = DeltaComplex(vertices, edges, faces)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc
    agg = None
    if "aggregation" in data:
        block = data["aggregation"]
        agg = Aggregation(_require(block, "edges", f"{where}: aggregation"),
                          [(fid, [(t, int(s)) for t, s in parts])
                           for fid, parts in _require(block, "faces",
                                                      f"{where}: aggregation")])
    bases = None
    if "h1_basis" in data or "h2_basis" in data:
        bases = {
            "h1": [(name, {e: int(c) for e, c in vec.items()})
                   for name, vec in data.get("h1_basis", [])],
            "h2": list(data.get("h2_basis", [])),
        }
    return complex_, agg, bases


def load_delta(path):
    return delta_from_dict(load_json(path), where=path)


def delta_to_dict(complex_, agg=None, h1_basis=None, h2_basis=None):
    data = {
        "vertices": list(complex_.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head}
                  for e in complex_.edges],
        "faces": [{"id": f.id, "v": list(f.v), "e01": f.e01, "e12": f.e12,
                   "e02": f.e02, "s01": f.s01, "s12": f.s12, "s02": f.s02}
                  for f in complex_.faces],
    }
    if agg is not None:
        data["aggregation"] = {
            "edges": list(agg.edges),
            "faces": [[fid, [[t, s] for t, s in parts]]
                      for fid, parts in agg.faces],
        }
    if h1_basis is not None:
        data["h1_basis"] = [[name, dict(vec)] for name, vec in h1_basis]
    if h2_basis is not None:
        data["h2_basis"] = list(h2_basis)
    return data
