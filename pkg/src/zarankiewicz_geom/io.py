"""JSON encoding of instances, certificates and results. Rationals travel as "p/q" strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .dichotomy import PipelineParams, Verdict
from .geometry import Halfspace, Parallelotope, Polytope, rat, rat_to_str
from .graph import BipartiteGraph, Graph
from .ordered import OrderedPattern
from .visibility import PolygonScene


class FormatError(ValueError):
    """Malformed input file."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def load_file(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict) or "kind" not in data:
        raise FormatError(f"{path}: expected a JSON object with a 'kind' field")
    return data


def _r(x) -> str:
    return rat_to_str(Fraction(x))


def _parse_rat(x) -> Fraction:
    if isinstance(x, float):
        raise FormatError("floats are not allowed; encode rationals as 'p/q'")
    try:
        return rat(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad rational {x!r}") from exc


def _vec(xs) -> tuple:
    return tuple(_parse_rat(x) for x in xs)


# --- graphs -----------------------------------------------------------------------

def graph_to_json(G: Graph) -> dict:
    d = {"kind": "graph", "n": G.n, "edges": [list(e) for e in G.edges()]}
    if isinstance(G, BipartiteGraph):
        d["classA"] = list(G.classA)
        d["classB"] = list(G.classB)
    return d


def graph_from_json(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = [tuple(int(x) for x in e) for e in d["edges"]]
        if any(len(e) != 2 or not (0 <= e[0] < n and 0 <= e[1] < n) for e in edges):
            raise FormatError("edge endpoint out of range")
        g = Graph.from_edges(n, edges)
        if "classA" in d:
            return BipartiteGraph(g.n, g.adj, tuple(d["classA"]), tuple(d["classB"]))
        return g
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad graph: {exc}") from exc


# --- dichotomy ------------------------------------------------------------------

def params_from_json(d: dict) -> PipelineParams:
    d = dict(d)
    if "c" in d:
        d["c"] = _parse_rat(d["c"])
    try:
        return PipelineParams(**d)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad parameters: {exc}") from exc


def verdict_to_json(verdict: Verdict, params: PipelineParams, verified: bool) -> dict:
    return {"tag": verdict.tag, "vertices": list(verdict.vertices), "reason": verdict.reason,
            "params": params.to_json(), "verified": verified}


def verdict_from_json(d: dict) -> tuple[Verdict, PipelineParams]:
    try:
        tag = d["tag"]
        if tag not in ("C4Free", "DensePatch", "Inconclusive"):
            raise FormatError(f"unknown verdict tag {tag!r}")
        verts = tuple(int(x) for x in d["vertices"])
        return Verdict(tag, verts, d.get("reason", "")), params_from_json(d["params"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad verdict: {exc}") from exc


# --- geometry --------------------------------------------------------------------

def halfspace_to_json(h: Halfspace) -> dict:
    return {"normal": [_r(x) for x in h.normal], "offset": _r(h.offset), "sense": h.sense}


def halfspace_from_json(d: dict) -> Halfspace:
    try:
        return Halfspace(_vec(d["normal"]), _parse_rat(d["offset"]), d.get("sense", "<="))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad halfspace: {exc}") from exc


def polytope_to_json(Q: Polytope) -> dict:
    return {"dim": Q.dim, "halfspaces": [halfspace_to_json(h) for h in Q.halfspaces]}


def polytope_from_json(d: dict) -> Polytope:
    try:
        return Polytope([halfspace_from_json(h) for h in d["halfspaces"]], dim=d.get("dim"))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad polytope: {exc}") from exc


def parallelotope_to_json(p: Parallelotope) -> dict:
    return {"base": [_r(x) for x in p.base], "generators": [[_r(x) for x in g] for g in p.generators]}


def parallelotope_from_json(d: dict) -> Parallelotope:
    try:
        return Parallelotope(_vec(d["base"]), tuple(_vec(g) for g in d["generators"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad parallelotope: {exc}") from exc


def scene_to_json(s: PolygonScene) -> dict:
    d = {"kind": "scene", "scene_kind": s.kind, "polygon": [[_r(x) for x in p] for p in s.polygon],
         "P": list(s.P)}
    if s.center is not None:
        d["center"] = [_r(x) for x in s.center]
    return d


def scene_from_json(d: dict) -> PolygonScene:
    try:
        center = _vec(d["center"]) if d.get("center") is not None else None
        return PolygonScene(tuple(_vec(p) for p in d["polygon"]), tuple(d["P"]), d["scene_kind"], center)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad scene: {exc}") from exc


def pattern_to_json(p: OrderedPattern) -> dict:
    return p.to_json()


def pattern_from_json(d: dict) -> OrderedPattern:
    try:
        return OrderedPattern.from_json(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad pattern: {exc}") from exc
