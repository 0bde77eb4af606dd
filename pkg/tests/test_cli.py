import json

from relintlab.cli import main

LINE = {"dim": 1, "ineq": {"A": [], "b": []}, "eq": {"E": [], "d": []}}
SQUARE = {
    "dim": 2,
    "ineq": {"A": [["-1", "0"], ["1", "0"], ["0", "-1"], ["0", "1"]],
             "b": ["0", "1", "0", "1"]},
    "eq": {"E": [], "d": []},
}
SHIFTED = dict(SQUARE, ineq={"A": SQUARE["ineq"]["A"],
                             "b": ["-2", "3", "0", "1"]})
PAIR = {
    "f": {"dim": 1, "kind": "convex",
          "pieces": [{"a": ["1"], "b": "0"}, {"a": ["-1"], "b": "0"}],
          "domain": LINE},
    "g": {"dim": 1, "kind": "concave",
          "pieces": [{"a": ["1"], "b": "-1"}, {"a": ["-1"], "b": "1"}],
          "domain": LINE},
}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_membership_interior(tmp_path, capsys):
    sq = write(tmp_path, "square.json", SQUARE)
    code, out, _ = run(capsys, "qri", sq, "1/2,1/2")
    assert code == 0
    blob = json.loads(out)
    assert blob["member"] is True
    assert blob["active_rows"] == []


def test_membership_boundary(tmp_path, capsys):
    sq = write(tmp_path, "square.json", SQUARE)
    for kind in ("ri", "iri", "qri"):
        code, out, _ = run(capsys, kind, sq, "0,1/2")
        assert code == 0
        blob = json.loads(out)
        assert blob["member"] is False
        assert blob["active_rows"] == [0]


def test_normal_cone_output(tmp_path, capsys):
    sq = write(tmp_path, "square.json", SQUARE)
    code, out, _ = run(capsys, "normal-cone", sq, "0,0")
    assert code == 0
    gens = json.loads(out)["generators"]
    assert sorted(gens) == [["-1", "0"], ["0", "-1"]]


def test_separate_then_verify(tmp_path, capsys):
    a = write(tmp_path, "a.json", SQUARE)
    b = write(tmp_path, "b.json", SHIFTED)
    code, out, _ = run(capsys, "separate", a, b)
    assert code == 0
    blob = json.loads(out)
    assert blob["separable"] is True
    cert = write(tmp_path, "cert.json", blob)
    code2, out2, _ = run(capsys, "verify-certificate", cert, a, b)
    assert code2 == 0
    assert json.loads(out2)["verified"] is True


def test_separate_overlapping(tmp_path, capsys):
    a = write(tmp_path, "a.json", SQUARE)
    code, out, _ = run(capsys, "separate", a, a)
    assert code == 0
    assert json.loads(out) == {"separable": False}


def test_duality_frozen_pair(tmp_path, capsys):
    pair = write(tmp_path, "pair.json", PAIR)
    code, out, _ = run(capsys, "duality", pair)
    assert code == 0
    blob = json.loads(out)
    assert blob["primal"] == "1"
    assert blob["dual"] == "1"
    assert blob["gap"] == "0"
    assert blob["dual_optimizer"] == ["1"]
    assert blob["qualification"]["qri_intersection"] is True


def test_certify_duality(tmp_path, capsys):
    pair = write(tmp_path, "pair.json", PAIR)
    code, out, _ = run(capsys, "certify-duality", pair)
    assert code == 0
    blob = json.loads(out)
    assert blob["ystar"] == ["1"]
    assert blob["qualification"]["qri_intersection"] is True


def test_conjugate_abs(tmp_path, capsys):
    fn = write(tmp_path, "absfun.json", PAIR["f"])
    code, out, _ = run(capsys, "conjugate", fn)
    assert code == 0
    blob = json.loads(out)
    # |x|* is the indicator of [-1, 1]: a single zero piece on that interval
    assert blob["pieces"] == [{"a": ["0"], "b": "0"}]
    assert blob["domain"]["ineq"]["b"] == ["1", "1"]


def test_seqlab_membership(tmp_path, capsys):
    e1 = write(tmp_path, "e1.json", {"prefix": ["1"], "tail": None})
    geo = write(tmp_path, "geo.json",
                {"prefix": [], "tail": {"c": "1/2", "rho": "1/2"}})
    code, out, _ = run(capsys, "seqlab", "ell1-qri", e1)
    assert code == 0 and json.loads(out) == {"member": False}
    code, out, _ = run(capsys, "seqlab", "ell1-qri", geo)
    assert code == 0 and json.loads(out) == {"member": True}
    code, out, _ = run(capsys, "seqlab", "ell1-iri", geo)
    assert code == 0 and json.loads(out) == {"member": False}


def test_seqlab_refute_frozen(tmp_path, capsys):
    geo = write(tmp_path, "geo.json",
                {"prefix": [], "tail": {"c": "1/2", "rho": "1/2"}})
    code, out, _ = run(capsys, "seqlab", "refute", geo)
    assert code == 0
    blob = json.loads(out)
    assert blob["indices"] == [4, 6, 8, 10, 12, 14, 16, 18]
    assert blob["epsilon"] == "1/4"
    checks = {c["alpha"]: c for c in blob["checks"]}
    assert checks["2"]["index"] == 6
    assert checks["2"]["coordinate"] == "-1/32"


def test_graph_check(tmp_path, capsys):
    band = write(tmp_path, "band.json", {
        "x_dim": 1, "y_dim": 1,
        "graph": {"dim": 2,
                  "ineq": {"A": [["-1", "0"], ["1", "0"],
                                 ["1", "-1"], ["-1", "1"]],
                           "b": ["0", "1", "0", "1"]},
                  "eq": {"E": [], "d": []}},
    })
    code, out, _ = run(capsys, "graph-check", band)
    assert code == 0
    blob = json.loads(out)
    assert blob["qri_inclusion"] and blob["iri_inclusion"]
    assert blob["equality"] is True


def test_gen_deterministic(capsys):
    code1, out1, _ = run(capsys, "gen", "--what", "polyhedra",
                         "--seed", "7", "--count", "3", "--dim", "2")
    code2, out2, _ = run(capsys, "gen", "--what", "polyhedra",
                         "--seed", "7", "--count", "3", "--dim", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3, _ = run(capsys, "gen", "--what", "polyhedra",
                         "--seed", "8", "--count", "3", "--dim", "2")
    assert code3 == 0 and out3 != out1


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "qri", "/definitely/not/here.json", "0,0")
    assert code == 2
    assert "no such file" in err


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,, }')
    code, _, err = run(capsys, "qri", str(bad), "0,0")
    assert code == 2
    assert "line 1 column 11" in err


def test_bad_point_exit_2(tmp_path, capsys):
    sq = write(tmp_path, "square.json", SQUARE)
    code, _, err = run(capsys, "qri", sq, "0.5,0.5")
    assert code == 2
    assert "input error" in err


def test_seqlab_arity_exit_2(tmp_path, capsys):
    geo = write(tmp_path, "geo.json",
                {"prefix": [], "tail": {"c": "1/2", "rho": "1/2"}})
    code, _, err = run(capsys, "seqlab", "normal-test", geo)
    assert code == 2
    assert "takes 2" in err


def test_suite_unknown_filter_exit_2(capsys):
    code, _, err = run(capsys, "suite", "--filter", "nonsense")
    assert code == 2
    assert "unknown filter" in err


def test_suite_single_batch(capsys):
    code, out, _ = run(capsys, "suite", "--filter", "sequences",
                       "--seed", "0")
    assert code == 0
    blob = json.loads(out)
    assert blob["pass"] is True
    assert blob["criteria"][0]["criterion"] == 5
