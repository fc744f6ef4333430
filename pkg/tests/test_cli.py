import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from amenalg.cli import main

SPECS = {
    "golden-mean": {"type": "builtin", "name": "golden-mean"},
    "fibonacci": {"type": "builtin", "name": "fibonacci"},
    "thue-morse": {"type": "builtin", "name": "thue-morse"},
    "full": {"type": "builtin", "name": "full"},
    "asymmetric": {"type": "builtin", "name": "asymmetric"},
    "gm-sft": {"type": "sft", "alphabet": ["a", "b"], "forbidden": ["bb"]},
}


@pytest.fixture
def spec_file(tmp_path):
    def make(name):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(SPECS[name]))
        return str(p)
    return make


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def test_analyze_fibonacci(spec_file, tmp_path):
    code, text = run(["analyze", "--spec", spec_file("fibonacci"), "--n-max", "8"], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert rep["complexity"] == [1] + [n + 1 for n in range(1, 9)]
    assert all(e["min_count"] == 1 for side in ("right", "left") for e in rep["profiles"][side]["entries"])
    assert rep["primitive"] is True


def test_analyze_full_shift(spec_file, tmp_path):
    code, text = run(["analyze", "--spec", spec_file("full"), "--n-max", "6"], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert all(c["status"] == "refuted" for c in rep["condition_two"])
    assert rep["entropy"]["trend"] == "constant"


def test_analyze_asymmetric_is_left_only(spec_file, tmp_path):
    code, text = run(["analyze", "--spec", spec_file("asymmetric"), "--n-max", "6", "--d-max", "3"], tmp_path)
    assert code == 0
    assert json.loads(text)["asymmetry"] == "left-only"


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", "--spec", str(bad)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"type": "sft", "alphabet": ["a"], "forbidden": [], "oops": 1}))
    assert main(["analyze", "--spec", str(unknown)]) == 2
    assert main(["analyze"]) == 2
    assert main(["nonsense"]) == 2


def test_folner_ladder_nests_and_verifies(spec_file, tmp_path):
    code, text = run(["folner", "--spec", spec_file("fibonacci")], tmp_path)
    rep = json.loads(text)
    assert code == 0 and len(rep["certificates"]) == 3 and rep["nested"]
    assert main(["verify", "--cert", str(tmp_path / "out.json"), "--out", str(tmp_path / "v.json")]) == 0


def test_folner_impossible(spec_file, tmp_path):
    code, text = run(["folner", "--spec", spec_file("full")], tmp_path)
    assert code == 4
    code, _ = run(["folner", "--spec", spec_file("golden-mean"), "--epsilon", "1/4"], tmp_path)
    assert code == 4


def test_folner_golden_mean_degree_one(spec_file, tmp_path):
    code, text = run(["folner", "--spec", spec_file("golden-mean"), "--epsilon", "1/2", "--v", "", "--d-max", "1"], tmp_path)
    assert code == 0
    cert = json.loads(text)["certificates"][0]
    assert cert["witness"] == "b" and cert["D"] == 1


def test_verify_detects_tampering(spec_file, tmp_path):
    run(["folner", "--spec", spec_file("fibonacci"), "--epsilon", "1/2"], tmp_path)
    doc = json.loads((tmp_path / "out.json").read_text())
    doc["certificates"][0]["dimLV"] -= 1
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", "--cert", str(bad), "--out", str(tmp_path / "v.json")]) == 1


def test_verify_against_wrong_spec(spec_file, tmp_path):
    run(["folner", "--spec", spec_file("fibonacci"), "--epsilon", "1"], tmp_path)
    code = main(["verify", "--cert", str(tmp_path / "out.json"), "--spec", spec_file("thue-morse"),
                 "--out", str(tmp_path / "v.json")])
    assert code == 1


def test_verify_missing_file(tmp_path):
    assert main(["verify", "--cert", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("name,d,extra", [("golden-mean", "2", []), ("golden-mean", "2", ["--prime", "5"]), ("fibonacci", "1", [])])
def test_free_roundtrip(spec_file, tmp_path, name, d, extra):
    code, text = run(["free", "--spec", spec_file(name), "--d", d, "--l-max", "3"] + extra, tmp_path)
    assert code == 0
    cert = json.loads(text)["certificate"]
    if name == "golden-mean":
        assert cert["verdict"] == "free-up-to-3"
    else:
        assert cert["verdict"] == "relation-found-at-2"
    assert main(["verify", "--cert", str(tmp_path / "out.json"), "--out", str(tmp_path / "v.json")]) == 0


def test_free_field_too_small(spec_file, tmp_path):
    assert main(["free", "--spec", spec_file("golden-mean"), "--d", "2", "--prime", "3"]) == 2


def test_conv(spec_file, tmp_path):
    code, text = run(["conv", "--spec", spec_file("fibonacci"), "--d", "6", "--r", "4"], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert rep["folner_check"]["dimL"] == 5 and rep["folner_check"]["dimLW"] == 7
    assert rep["samples"]["associative"] and rep["samples"]["star_anti_automorphism"] and rep["shift_inverse"]
    assert main(["conv", "--spec", spec_file("full"), "--out", str(tmp_path / "c.json")]) == 4


def test_iso(tmp_path):
    code, text = run(["iso", "--family", "2,8,128", "--c2", "2/5"], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert rep["zero_boundary"]["size"] == 3483
    assert all(rep["full_matrix_algebra"].values())
    assert rep["violation"]["witness"]["x"] == 8
    assert main(["iso", "--family", "2,3"]) == 2


def test_table_format(spec_file, tmp_path, capsys):
    assert main(["analyze", "--spec", spec_file("fibonacci"), "--format", "table", "--n-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "p(n)" in out and "asymmetry" in out


@pytest.mark.parametrize("argv", [
    ["analyze", "--n-max", "6"],
    ["folner"],
    ["conv", "--seed", "7", "--samples", "5"],
    ["free", "--d", "1", "--l-max", "2"],
])
def test_determinism(spec_file, tmp_path, argv):
    argv = argv[:1] + ["--spec", spec_file("fibonacci")] + argv[1:]
    _, a = run(argv, tmp_path, "a.json")
    _, b = run(argv, tmp_path, "b.json")
    assert a == b and a


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(["fibonacci", "thue-morse", "gm-sft"]), st.sampled_from(["1", "1/2", "1/3", "1,1/2", "1,1/3,1/5"]),
       st.sampled_from(["right", "left"]))
def test_emitted_certificates_verify(tmp_path_factory, name, eps, side):
    tmp = tmp_path_factory.mktemp("rt")
    spec = tmp / "s.json"
    spec.write_text(json.dumps(SPECS[name]))
    out = tmp / "c.json"
    code = main(["folner", "--spec", str(spec), "--epsilon", eps, "--side", side, "--out", str(out)])
    if name == "gm-sft":
        assert code == 4
        return
    assert code == 0
    assert main(["verify", "--cert", str(out), "--out", str(tmp / "v.json")]) == 0


def test_module_entry_point(spec_file):
    res = subprocess.run([sys.executable, "-m", "amenalg", "analyze", "--spec", spec_file("fibonacci"), "--n-max", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["complexity"] == [1, 2, 3, 4]
