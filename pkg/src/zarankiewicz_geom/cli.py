"""Command line runner: ``zarank <command> [options]``.

Exit codes: 0 success, 1 a property violation was found, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .constructions import (
    CSV_COLUMNS, SceneSpec, TilingParams, generate_scene, grid_incidences, run_construction,
)
from .decomp import (
    decompose_polytope, direction_set, piece_directions_ok, random_halfspace_family,
    random_pol_polytope, verify_cover,
)
from .dichotomy import PipelineParams, dichotomy_run, verify_verdict
from .geometry import GeometryError, rat, rat_to_str
from .graph import (
    BipartiteGraph, complete_bipartite, complete_graph, find_C4, gen_projective_plane, gnp,
    random_bipartite,
)
from .incidence import prepare_reduction, reduction_trial
from .seeding import mix64
from .visibility import PolygonScene, audit_patterns, separated_reduction, split_chains, visibility_graph

OK, VIOLATION, INVALID = 0, 1, 2


class UsageError(ValueError):
    pass


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--params expects key=value, got {item!r}")
        try:
            q = rat(val)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad value for {key}: {val!r}") from exc
        out[key] = int(q) if q.denominator == 1 else q
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows, columns) -> str:
    buf = _stdio.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: r[c] for c in columns})
    return buf.getvalue()


def _trial_seeds(args) -> list[int]:
    if args.seed is None:
        raise UsageError("--seed is required for randomized commands")
    return [mix64(args.seed, i) for i in range(args.trials)]


# --- gen ----------------------------------------------------------------------------

def cmd_gen(args) -> int:
    p = {**_parse_params(args.params)}
    t = args.type
    if t == "projective":
        G = gen_projective_plane(int(p.get("q", 2)))
    elif t == "complete":
        G = complete_graph(int(p.get("n", 5)))
    elif t == "complete_bipartite":
        G = complete_bipartite(int(p.get("a", 3)), int(p.get("b", 3)))
    elif t in ("gnp", "bipartite"):
        if args.seed is None:
            raise UsageError("--seed is required for random graphs")
        prob = Fraction(p.get("p", Fraction(1, 2)))
        if t == "gnp":
            G = gnp(int(p.get("n", 20)), prob, args.seed)
        else:
            G = random_bipartite(int(p.get("na", 10)), int(p.get("nb", 10)), prob, args.seed)
    elif t in ("x_monotone", "star", "convex"):
        if args.seed is None:
            raise UsageError("--seed is required for scenes")
        kind = {"x_monotone": "x_monotone_polygon", "star": "star_polygon", "convex": "convex_polygon"}[t]
        scene = PolygonScene.from_scene(generate_scene(SceneSpec(kind, int(p.get("size", 12)), args.seed)))
        _emit(io.dumps(io.scene_to_json(scene)), args.out)
        return OK
    else:
        raise UsageError(f"unknown instance type {t!r}")
    _emit(io.dumps(io.graph_to_json(G)), args.out)
    return OK


# --- decompose -----------------------------------------------------------------------

def _decompose_trial(Q, H, samples: int, seed: int) -> dict:
    dec = decompose_polytope(Q, H)
    chk = verify_cover(Q, dec.pieces, samples, seed)
    return {"family": [io.halfspace_to_json(h) for h in H], "polytope": io.polytope_to_json(Q),
            "pieces": [io.parallelotope_to_json(pc) for pc in dec.pieces],
            "n_pieces": len(dec.pieces), "misses": chk.misses, "leaks": chk.leaks,
            "directions_ok": piece_directions_ok(dec.pieces, dec.directions),
            "samples": samples, "seed": seed}


def _decompose_ok(trial: dict) -> bool:
    return trial["misses"] == 0 and trial["leaks"] == 0 and trial["directions_ok"]


def cmd_decompose(args) -> int:
    p = _parse_params(args.params)
    samples = int(p.get("samples", 1000))
    trials = []
    if args.input:
        d = io.load_file(args.input)
        Q = io.polytope_from_json(d)
        H = [io.halfspace_from_json(h) for h in d.get("family", [])] or list(Q.halfspaces)
        trials.append(_decompose_trial(Q, H, samples, args.seed or 0))
    else:
        h = int(p.get("h", 8))
        for s in _trial_seeds(args):
            H = random_halfspace_family(h, s)
            Q = random_pol_polytope(H, s)
            trials.append(_decompose_trial(Q, H, samples, s))
    _emit(io.dumps({"kind": "decompose-result", "trials": trials}), args.out)
    return OK if all(_decompose_ok(t) for t in trials) else VIOLATION


def _verify_decompose(d: dict) -> bool:
    for t in d["trials"]:
        H = [io.halfspace_from_json(h) for h in t["family"]]
        Q = io.polytope_from_json(t["polytope"])
        pieces = [io.parallelotope_from_json(pc) for pc in t["pieces"]]
        chk = verify_cover(Q, pieces, int(t["samples"]), int(t["seed"]))
        ds = direction_set(H)
        if chk.misses or chk.leaks or not piece_directions_ok(pieces, ds):
            return False
        if (chk.misses, chk.leaks) != (t["misses"], t["leaks"]) or len(pieces) != t["n_pieces"]:
            return False
    return True


# --- construct -------------------------------------------------------------------------

def cmd_construct(args) -> int:
    p = _parse_params(args.params)
    u = args.u if args.u is not None else int(p.get("u", 3))
    k = args.k if args.k is not None else int(p.get("k", 4))
    bits = int(p.get("bits", 40))
    try:
        TilingParams(u, k)
    except (ValueError, OverflowError) as exc:
        raise UsageError(str(exc)) from exc
    results = [run_construction(u, k, s, bits) for s in _trial_seeds(args)]
    if args.format == "csv":
        _emit(_csv_text([r.csv_row() for r in results], CSV_COLUMNS), args.out)
    else:
        runs = [{**r.csv_row(), "bits": r.bits, "points": [list(q) for q in r.points],
                 "edges": [list(e) for e in r.edges]} for r in results]
        _emit(io.dumps({"kind": "construct-result", "runs": runs}), args.out)
    return OK if all(r.c4_free for r in results) else VIOLATION


def _verify_construct(d: dict) -> bool:
    for run in d["runs"]:
        params = TilingParams(int(run["u"]), int(run["k"]))
        pts = [tuple(int(x) for x in q) for q in run["points"]]
        edges = sorted(tuple(e) for e in grid_incidences(pts, params, int(run["bits"])))
        if edges != sorted(tuple(e) for e in run["edges"]):
            return False
        G = BipartiteGraph.from_biadjacency(len(pts), params.n, edges)
        if find_C4(G) is not None or not run["c4_free"]:
            return False
    return True


# --- dichotomy ----------------------------------------------------------------------------

def cmd_dichotomy(args) -> int:
    if not args.input:
        raise UsageError("dichotomy needs --in GRAPH.json")
    G = io.graph_from_json(io.load_file(args.input))
    p = _parse_params(args.params)
    for name in ("k", "c", "tau", "v"):
        val = getattr(args, name)
        if val is not None:
            p[name] = rat(val) if name == "c" else int(val)
    if args.seed is None:
        raise UsageError("--seed is required")
    p["seed"] = args.seed
    try:
        params = PipelineParams(**p)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters: {exc}") from exc
    verdict = dichotomy_run(G, params)
    ok = verify_verdict(G, verdict, params)
    out = {"kind": "verdict", **io.verdict_to_json(verdict, params, ok), "graph": io.graph_to_json(G)}
    _emit(io.dumps(out), args.out)
    return OK if ok else VIOLATION


def _verify_verdict_file(d: dict) -> bool:
    G = io.graph_from_json(d["graph"])
    verdict, params = io.verdict_from_json(d)
    return verify_verdict(G, verdict, params) and bool(d.get("verified"))


# --- incidence ---------------------------------------------------------------------------

def _incidence_instance(seed: int, h: int, n_points: int):
    H = random_halfspace_family(h, seed)
    Q = random_pol_polytope(H, seed)
    box = Q.bounding_box()
    rng = random.Random(seed)
    pts = []
    while len(pts) < n_points:
        p = tuple(lo + (hi - lo) * Fraction(rng.randrange(1, 64), 64) for lo, hi in zip(box.lo, box.hi))
        if Q.contains(p):
            pts.append(p)
    return H, Q, pts


def cmd_incidence(args) -> int:
    p = _parse_params(args.params)
    h = int(p.get("h", 5))
    n_points = int(p.get("points", 4))
    if args.seed is None:
        raise UsageError("--seed is required")
    H, Q, pts = _incidence_instance(args.seed, h, n_points)
    prep = prepare_reduction(pts, [Q], H)
    exact = prep.exact_survival()
    hits = {e: 0 for e in exact}
    boxes_ok = True
    for s in _trial_seeds(args):
        res = reduction_trial(prep, random.Random(s))
        boxes_ok = boxes_ok and res.all_boxes_ok
        for e in res.edges:
            hits[e] += 1
    rows = [{"point": i, "polytope": j, "exact": rat_to_str(exact[(i, j)]), "hits": hits[(i, j)]}
            for (i, j) in sorted(exact)]
    out = {"kind": "incidence-result", "seed": args.seed, "h": h, "points": n_points,
           "trials": args.trials, "types": len(prep.types), "pieces": len(prep.pieces[0]),
           "boxes_ok": boxes_ok, "edges": rows}
    _emit(io.dumps(out), args.out)
    return OK if boxes_ok else VIOLATION


def _verify_incidence(d: dict) -> bool:
    H, Q, pts = _incidence_instance(int(d["seed"]), int(d["h"]), int(d["points"]))
    prep = prepare_reduction(pts, [Q], H)
    exact = prep.exact_survival()
    claimed = {(r["point"], r["polytope"]): Fraction(r["exact"]) for r in d["edges"]}
    return claimed == exact and bool(d["boxes_ok"])


# --- visibility ---------------------------------------------------------------------------

def _visibility_trial(scene: PolygonScene, scene_id) -> dict:
    vis = visibility_graph(scene)
    where = {q: t for t, q in enumerate(vis.order)}
    A, B = split_chains(scene)
    red = separated_reduction(vis.graph, [where[i] for i in A if i in where],
                              [where[i] for i in B if i in where], audit=False)
    fam = red.family
    return {"scene_id": scene_id, "scene": io.scene_to_json(scene), "e_Q": red.Q.m,
            "e_AB": red.cross_edges, "segments": len(fam.vsegs) + len(fam.hsegs),
            "A": len(A), "B": len(B), "audit": audit_patterns(scene, scene_id)}


def _visibility_ok(t: dict) -> bool:
    return t["e_Q"] == t["e_AB"] and t["segments"] <= t["A"] + t["B"] and not t["audit"]


def cmd_visibility(args) -> int:
    p = _parse_params(args.params)
    trials = []
    if args.input:
        scene = io.scene_from_json(io.load_file(args.input))
        trials.append(_visibility_trial(scene, 0))
    else:
        kind = {"x_monotone": "x_monotone_polygon", "star": "star_polygon",
                "convex": "convex_polygon"}.get(args.scene_kind)
        if kind is None:
            raise UsageError(f"unknown scene kind {args.scene_kind!r}")
        size = int(p.get("size", 20))
        for i, s in enumerate(_trial_seeds(args)):
            scene = PolygonScene.from_scene(generate_scene(SceneSpec(kind, size, s)))
            trials.append(_visibility_trial(scene, i))
    _emit(io.dumps({"kind": "visibility-result", "trials": trials}), args.out)
    return OK if all(_visibility_ok(t) for t in trials) else VIOLATION


def _verify_visibility(d: dict) -> bool:
    for t in d["trials"]:
        fresh = _visibility_trial(io.scene_from_json(t["scene"]), t["scene_id"])
        if fresh != t or not _visibility_ok(fresh):
            return False
    return True


# --- verify / report -------------------------------------------------------------------------

VERIFIERS = {
    "verdict": _verify_verdict_file,
    "construct-result": _verify_construct,
    "decompose-result": _verify_decompose,
    "incidence-result": _verify_incidence,
    "visibility-result": _verify_visibility,
    "graph": lambda d: io.graph_from_json(d) is not None,
    "scene": lambda d: io.scene_from_json(d) is not None,
}


def cmd_verify(args) -> int:
    d = io.load_file(args.file)
    fn = VERIFIERS.get(d["kind"])
    if fn is None:
        raise UsageError(f"unknown result kind {d['kind']!r}")
    try:
        ok = fn(d)
    except io.FormatError:
        raise
    except (KeyError, TypeError, ValueError, GeometryError) as exc:
        raise io.FormatError(f"malformed {d['kind']} file: {exc}") from exc
    _emit(io.dumps({"file_kind": d["kind"], "ok": bool(ok)}), args.out)
    return OK if ok else VIOLATION


def _read_rows(path: str) -> tuple[list[str], list[dict]]:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        d = json.loads(text)
        if d.get("kind") != "construct-result":
            raise UsageError(f"{path}: only construct results can be merged")
        return CSV_COLUMNS, [{c: str(r[c]) for c in CSV_COLUMNS} for r in d["runs"]]
    reader = csv.DictReader(_stdio.StringIO(text))
    return list(reader.fieldnames or []), list(reader)


def cmd_report(args) -> int:
    columns, rows, seen = CSV_COLUMNS, [], set()
    for path in args.files:
        cols, rs = _read_rows(path)
        if cols != CSV_COLUMNS:
            raise UsageError(f"{path}: columns {cols} do not match construct results")
        for r in rs:
            key = (int(r["u"]), int(r["k"]), int(r["seed"]))
            if key in seen:
                raise UsageError(f"duplicate parameters {key}")
            seen.add(key)
            rows.append((key, r))
    rows.sort(key=lambda kr: kr[0])
    _emit(_csv_text([r for _, r in rows], columns), args.out)
    return OK


# --- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zarank", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, trials=True):
        p.add_argument("--seed", type=int, default=None, help="master seed (64-bit)")
        if trials:
            p.add_argument("--trials", type=int, default=1)
        p.add_argument("--out", default=None, help="output path (stdout if omitted)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
        return p

    g = common(sub.add_parser("gen", help="write a graph or scene instance"), trials=False)
    g.add_argument("--type", required=True)
    g.set_defaults(func=cmd_gen)

    d = common(sub.add_parser("decompose", help="cover POL(H) polytopes by parallelotopes"))
    d.add_argument("--in", dest="input", default=None)
    d.set_defaults(func=cmd_decompose)

    c = common(sub.add_parser("construct", help="C4-free point-ellipse construction"))
    c.add_argument("--u", type=int, default=None)
    c.add_argument("--k", type=int, default=None)
    c.set_defaults(func=cmd_construct)

    y = common(sub.add_parser("dichotomy", help="C4-free subgraph or dense patch"), trials=False)
    y.add_argument("--in", dest="input", default=None)
    y.add_argument("--k", default=None)
    y.add_argument("--c", default=None)
    y.add_argument("--tau", default=None)
    y.add_argument("--v", default=None)
    y.set_defaults(func=cmd_dichotomy)

    i = common(sub.add_parser("incidence", help="random reduction of polytope incidences to boxes"))
    i.set_defaults(func=cmd_incidence)

    v = common(sub.add_parser("visibility", help="visibility graphs, segment reduction, pattern audits"))
    v.add_argument("--in", dest="input", default=None)
    v.add_argument("--scene-kind", default="x_monotone")
    v.set_defaults(func=cmd_visibility)

    f = sub.add_parser("verify", help="re-check a result file")
    f.add_argument("file")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="merge construct CSVs into one growth table")
    r.add_argument("files", nargs="*")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = ap.parse_args(argv)
    if args.command == "construct" and "--format" not in argv:
        args.format = "csv"
    try:
        return args.func(args)
    except (UsageError, io.FormatError, GeometryError, ValueError) as exc:
        print(f"zarank: error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
