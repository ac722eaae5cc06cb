import csv
import io as _io
import json

import pytest

from zarankiewicz_geom.cli import INVALID, OK, VIOLATION, main


def run(argv):
    return main([str(a) for a in argv])


def write_gamma(tmp_path, q=7):
    path = tmp_path / f"gamma{q}.json"
    assert run(["gen", "--type", "projective", "--params", f"q={q}", "--out", path]) == OK
    return path


def test_dichotomy_on_gamma7(tmp_path):
    g = write_gamma(tmp_path)
    out = tmp_path / "verdict.json"
    assert run(["dichotomy", "--in", g, "--seed", 7, "--k", 8, "--c", "0.4", "--out", out]) == OK
    d = json.loads(out.read_text())
    assert d["tag"] == "C4Free" and d["verified"]
    assert len(d["vertices"]) == 2 * 57
    assert run(["verify", out]) == OK


def test_verify_mutated_certificate(tmp_path):
    g = write_gamma(tmp_path)
    out = tmp_path / "verdict.json"
    run(["dichotomy", "--in", g, "--seed", 7, "--k", 8, "--c", "2/5", "--out", out])
    d = json.loads(out.read_text())
    d["vertices"] = d["vertices"][1:]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    assert run(["verify", bad]) == VIOLATION


def test_verify_malformed(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run(["verify", p]) == INVALID
    p.write_text(json.dumps({"kind": "nonsense"}))
    assert run(["verify", p]) == INVALID
    p.write_text(json.dumps({"kind": "verdict", "graph": {}}))
    assert run(["verify", p]) == INVALID


def test_invalid_inputs(tmp_path):
    assert run(["dichotomy", "--seed", 1]) == INVALID
    assert run(["construct", "--u", 1, "--k", 3, "--seed", 0]) == INVALID
    assert run(["gen", "--type", "gnp"]) == INVALID
    assert run(["gen", "--type", "projective", "--params", "q=4"]) == INVALID
    assert run(["gen", "--type", "projective", "--params", "q"]) == INVALID
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_construct_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert run(["construct", "--u", 3, "--k", 4, "--seed", 1, "--out", out]) == OK
    rows = list(csv.DictReader(_io.StringIO(out.read_text())))
    assert len(rows) == 1
    assert int(rows[0]["n_ellipses"]) == 4 * 81
    assert rows[0]["c4_free"] == "True"


def test_construct_json_roundtrip(tmp_path):
    out = tmp_path / "c.json"
    assert run(["construct", "--u", 2, "--k", 3, "--seed", 4, "--trials", 2, "--format", "json",
                "--out", out]) == OK
    assert run(["verify", out]) == OK
    d = json.loads(out.read_text())
    d["runs"][0]["edges"] = d["runs"][0]["edges"][1:]
    out.write_text(json.dumps(d))
    assert run(["verify", out]) == VIOLATION


@pytest.mark.parametrize("argv", [
    ["construct", "--u", 2, "--k", 3, "--seed", 9, "--trials", 2],
    ["visibility", "--seed", 3, "--trials", 2, "--params", "size=10"],
    ["decompose", "--seed", 5, "--trials", 1, "--params", "h=4", "samples=100"],
    ["incidence", "--seed", 2, "--trials", 20],
    ["gen", "--type", "star", "--seed", 4],
])
def test_byte_determinism(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(argv + ["--out", a]) == OK
    assert run(argv + ["--out", b]) == OK
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["visibility", "--seed", 3, "--trials", 2, "--params", "size=10"],
    ["decompose", "--seed", 5, "--trials", 1, "--params", "h=4", "samples=100"],
    ["incidence", "--seed", 2, "--trials", 10],
])
def test_results_verify(tmp_path, argv):
    out = tmp_path / "r.json"
    assert run(argv + ["--out", out]) == OK
    rep1 = tmp_path / "v1.json"
    rep2 = tmp_path / "v2.json"
    assert run(["verify", out, "--out", rep1]) == OK
    assert run(["verify", out, "--out", rep2]) == OK
    assert rep1.read_bytes() == rep2.read_bytes()


def test_visibility_from_scene_file(tmp_path):
    scene = tmp_path / "s.json"
    assert run(["gen", "--type", "x_monotone", "--seed", 2, "--params", "size=12", "--out", scene]) == OK
    out = tmp_path / "v.json"
    assert run(["visibility", "--in", scene, "--out", out]) == OK
    t = json.loads(out.read_text())["trials"][0]
    assert t["e_Q"] == t["e_AB"] and t["audit"] == []


def test_report_merge(tmp_path):
    files = []
    for k in (4, 3):
        p = tmp_path / f"k{k}.csv"
        assert run(["construct", "--u", 2, "--k", k, "--seed", 1, "--out", p]) == OK
        files.append(p)
    out = tmp_path / "merged.csv"
    assert run(["report", *files, "--out", out]) == OK
    rows = list(csv.DictReader(_io.StringIO(out.read_text())))
    assert [int(r["k"]) for r in rows] == [3, 4]
    ns = [int(r["n_ellipses"]) for r in rows]
    assert ns == sorted(ns)
    assert run(["report", files[0], files[0]]) == INVALID
    empty = tmp_path / "empty.csv"
    assert run(["report", "--out", empty]) == OK
    assert empty.read_text().strip().count("\n") == 0
    other = tmp_path / "other.csv"
    other.write_text("a,b\n1,2\n")
    assert run(["report", other]) == INVALID
