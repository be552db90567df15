import json

import pytest

from muenchWorkbench import main

BAD_MP = "1: p -> p ; taut\n2: q ; mp 1 3\n"


def _read(path):
    return json.loads(open(path, encoding="utf-8").read())


# -- derive / check-proof -------------------------------------
@pytest.mark.parametrize("argv", [
    ["cons-provable", "--alpha", "1", "--beta", "0"],
    ["cons-absorption", "--alpha", "w", "--beta", "1", "--phi", "[0]p"],
    ["box-disjunction", "--alpha", "2", "--beta", "1", "--phi", "p", "--psi", "q"],
    ["box-level-mono", "--alpha", "2", "--beta", "0", "--phi", "p & q"],
    ["blacksquare-lob", "--phi", "p"],
])
def test_derived_proofs_are_accepted(tmp_path, argv):
    out = tmp_path / "proof.txt"
    assert main(["derive", *argv, "--out", str(out)]) == 0
    assert main(["check-proof", str(out)]) == 0

def test_derive_parameter_errors(capsys):
    assert main(["derive", "cons-provable", "--alpha", "0", "--beta", "0"]) == 2
    assert main(["derive", "cons-absorption", "--alpha", "1", "--beta", "0"]) == 2
    assert main(["derive", "cons-provable", "--alpha", "1+", "--beta", "0"]) == 2
    assert "[ERROR]" in capsys.readouterr().err

def test_derive_to_stdout(capsys):
    assert main(["derive", "cons-provable", "--alpha", "1", "--beta", "0"]) == 0
    assert capsys.readouterr().out.startswith("system GLP 2")

def test_check_proof_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text(BAD_MP, encoding="utf-8")
    assert main(["check-proof", str(bad)]) == 1
    assert "2" in capsys.readouterr().err
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    assert main(["check-proof", str(empty)]) == 2
    assert main(["check-proof", str(tmp_path / "missing.txt")]) == 2


# -- parse ----------------------------------------------------
def test_parse(capsys):
    assert main(["parse", "ordinal", "ω^2 + 3"]) == 0
    assert capsys.readouterr().out.strip() == "w^2+3"
    assert main(["parse", "formula", "(p->q)->[1]~[1]~r"]) == 0
    assert capsys.readouterr().out.strip() == "(p -> q) -> [1]<1>r"
    assert main(["parse", "formula", "p &"]) == 2
    assert main(["parse", "ordinal", "1+w"]) == 2


# -- eval -----------------------------------------------------
def test_eval_one_world(tmp_path, write_json):
    frame = write_json("one.json", {"worlds": 1, "edges": []})
    out = tmp_path / "eval.json"
    assert main(["eval", "--frame", frame, "--grid", "0,1,2", "--out", str(out)]) == 0
    report = _read(out)
    assert report["fileinfo"]["name"] == "muenchWorkbench"
    levels = report["frames"][0]["levels"]
    assert [lv["table"] for lv in levels] == [[1, 1]] * 3
    assert report["frames"][0]["stabilization_index"] == "0"

def test_eval_two_chain_single(tmp_path, write_json):
    frame = write_json("two.json", {"worlds": 2, "edges": [[1, 0]]})
    out = tmp_path / "eval.json"
    assert main(["eval", "--frame", frame, "--grid", "0,1", "--mode", "single",
                 "--out", str(out)]) == 0
    levels = _read(out)["frames"][0]["levels"]
    assert levels[1]["table"][0] == 3
    assert levels[0]["consistency"] == 2

def test_eval_large_frames_use_digests(tmp_path):
    out = tmp_path / "eval.json"
    assert main(["eval", "--random", "1,6,3", "--out", str(out)]) == 0
    fr = _read(out)["frames"][0]
    key = "table" if fr["worlds"] <= 4 else "sha256"
    assert all(key in lv for lv in fr["levels"])

def test_eval_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["eval", "--random", "3,5,11", "--grid", "0,1,w", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()

@pytest.mark.parametrize("argv", [
    ["eval"],
    ["eval", "--all", "2", "--grid", "1,2"],
    ["eval", "--random", "3,4"],
    ["eval", "--all", "2", "--mode", "both"],
    ["eval", "--all", "2", "--oracles", "9"],
])
def test_eval_config_errors(argv):
    assert main(argv) == 2


# -- suite / explore ------------------------------------------
def test_suite_with_report_and_html(tmp_path):
    out, html = tmp_path / "r.json", tmp_path / "r.html"
    assert main(["suite", "vector-soundness", "--random", "3,4,1",
                 "--out", str(out), "--html", str(html)]) == 0
    report = _read(out)
    assert report["ok"] and report["asserted"]
    assert report["fileinfo"]["info"] == "suite report"
    assert "<table>" in html.read_text(encoding="utf-8")

def test_gl_laws_rejects_reflexive_frame(write_json):
    frame = write_json("loop.json", {"worlds": 2, "edges": [[0, 0]]})
    assert main(["suite", "gl-laws", "--frame", frame]) == 2

def test_exploratory_suite_and_explore(tmp_path):
    out = tmp_path / "x.json"
    assert main(["suite", "single-exploratory", "--all", "2", "--out", str(out)]) == 0
    assert _read(out)["asserted"] is False
    assert main(["explore", "--all", "2", "--grid", "0,1,2", "--out", str(out)]) == 0
    assert _read(out)["command"] == "explore"

def test_config_file_and_overrides(tmp_path, write_json):
    cfg = write_json("run.json", {"fileinfo": {"name": "muenchWorkbench", "info": "run configuration",
                                               "version": "1.0"},
                                  "all_worlds": 2, "grid": ["0", "1"], "mode": "single"})
    out = tmp_path / "r.json"
    assert main(["suite", "imc-uniqueness", "--config", cfg, "--out", str(out)]) == 0
    assert _read(out)["frame_count"] == 3
    assert main(["eval", "--config", cfg, "--mode", "vector", "--out", str(out)]) == 0
    assert _read(out)["mode"] == "vector"

def test_usage_errors_and_language(capsys):
    assert main(["suite", "no-such-suite"]) == 2
    assert main([]) == 2
    assert main(["--lang", "ja", "derive", "cons-provable", "--alpha", "1", "--beta", "0"]) == 0
    assert main(["--help"]) == 0
