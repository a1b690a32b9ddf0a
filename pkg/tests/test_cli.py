from __future__ import annotations

import json
import subprocess
import sys

import pytest

from carnot_sard import cli, reports


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_analyze_heisenberg(capsys):
    rep = run_json(capsys, "analyze", "builtin:heisenberg-1")
    s = rep["step2"]
    assert s["ktilde"]["value"] == 1 and s["ktilde"]["certified"]
    assert s["codimension_bound"] == 3
    assert s["note"].startswith("Abn = {0}")
    assert rep["tool"]["name"] == "carnot-sard" and rep["seed"] == 0


def test_analyze_simple_line_pencil(capsys):
    s = run_json(capsys, "analyze", "builtin:simple-line-pencil")["step2"]
    assert s["ktilde"]["value"] == 1 and s["ktilde"]["certified"]
    assert s["codimension_bound"] == 3
    assert s["abnormal_set"]["codimension"] == [4, 4] and s["abnormal_set"]["exact"]
    assert "codimension 4" in s["note"]


def test_constants_and_W_presentations_agree(capsys):
    a = run_json(capsys, "analyze", "builtin:simple-line-constants")["step2"]
    b = run_json(capsys, "analyze", "builtin:simple-line-pencil")["step2"]
    assert a["ktilde"]["value"] == b["ktilde"]["value"]
    assert a["abnormal_set"]["codimension"] == b["abnormal_set"]["codimension"]


def test_analyze_filiform(capsys):
    code, out, _ = run(capsys, "analyze", "builtin:filiform-I-4")
    assert code == 0
    assert "abnormal set: horizontal line exp(tX2), codimension 4" in out
    f = run_json(capsys, "analyze", "builtin:filiform-II-5")["filiform"]
    assert f["abnormal_dimension"] == 3 and f["abnormal_codimension"] == 3


def test_analyze_higher_step_constants(capsys):
    rep = run_json(capsys, "analyze", "builtin:engel")
    assert rep["group"]["presentation"] == "constants" and rep["group"]["step"] == 3
    assert "step2" not in rep and "filiform" not in rep and "classify" in rep["note"]


def test_classify_staircase(capsys):
    rep = run_json(capsys, "classify", "builtin:filiform-II-5", "builtin:staircase-a-1-3")
    assert rep["singular"] is True and rep["agreement"] is True
    assert rep["structural"]["a"] == "1/3"
    m = rep["endpoint_membership"]
    assert m["certificate_covector"] == ["0", "0", "0", "0", "-1/3", "1"]
    assert m["status"] == "witness"


def test_classify_heisenberg_constant(capsys):
    rep = run_json(capsys, "classify", "builtin:heisenberg-1", "builtin:constant-1-1")
    assert rep["singular"] is False and rep["agreement"] is True
    assert "endpoint_membership" not in rep


@pytest.mark.parametrize("group,control", [("heisenberg-1", "zero-2"), ("engel", "zero-2"),
                                           ("full-support-pencil", "zero-4"), ("filiform-II-7", "zero-2")])
def test_zero_control_is_singular(capsys, group, control):
    rep = run_json(capsys, "classify", f"builtin:{group}", f"builtin:{control}")
    assert rep["singular"] is True and rep["general"]["image_is_g1"] is True


def test_sample_full_support_pencil_is_origin(capsys):
    s = run_json(capsys, "sample", "builtin:full-support-pencil", "--count", "100")["summary"]
    assert s["count"] == 100 and s["all_zero"] and s["span_dimension"] == 0


def test_sample_simple_line_spans_second_layer_part(capsys):
    s = run_json(capsys, "sample", "builtin:simple-line-pencil", "--samples", "100")["summary"]
    assert s["span_dimension"] == 2
    assert s["span_basis"] == [["0", "0", "1", "0", "0", "0"], ["0", "0", "0", "1", "0", "0"]]


def test_sample_filiform(capsys):
    s = run_json(capsys, "sample", "builtin:filiform-II-5", "--count", "100")["summary"]
    assert s["membership_passed"] == 100


def test_sample_without_presentation_is_validation_error(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"layer_dims": [2, 1, 2], "brackets": [[1, 2, ["0", "0", "1", "0", "0"]],
                                                                  [1, 3, ["0", "0", "0", "1", "0"]],
                                                                  [2, 3, ["0", "0", "0", "0", "1"]]]}))
    assert run(capsys, "sample", str(p))[0] == 3


def test_reports_are_byte_identical(capsys):
    for argv in (["analyze", "builtin:full-support-pencil"], ["sample", "builtin:simple-line-pencil", "--count", "20"],
                 ["classify", "builtin:filiform-II-7", "builtin:staircase-a-1-3"]):
        first = run(capsys, *argv, "--format", "json", "--seed", "5")[1]
        assert first == run(capsys, *argv, "--format", "json", "--seed", "5")[1]


def test_parse_errors_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"rank": 2,\n "W": [[[1, 2, "x"]]]}')
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2 and "$.W[0][0][2]" in err
    p.write_text("{\n  oops")
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2 and ":2:3" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "analyze", "builtin:nope")[0] == 2


def test_validation_errors_exit_3(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"layer_dims": [3, 1], "brackets": [[1, 2, ["0", "0", "0", "1"]],
                                                                [1, 3, ["0", "0", "1", "0"]]]}))
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 3 and "validation error" in err


def test_control_rank_mismatch_exit_2(capsys):
    assert run(capsys, "classify", "builtin:heisenberg-2", "builtin:constant-1-1")[0] == 2


def test_disagreement_exit_4(capsys, monkeypatch):
    monkeypatch.setattr(reports.filiform, "classify_type2", lambda u: (False, None))
    code, out, err = run(capsys, "classify", "builtin:filiform-II-5", "builtin:staircase-a-1-3")
    assert code == 4 and "disagree" in err
    assert "agreement: no" in out


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "builtin:heisenberg-1" in out and "builtin:staircase-a-1-3" in out


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("criterion  2 PASS") and lines[1].startswith("criterion 10 PASS")
    assert lines[-1].startswith("selftest: all 2 criteria passed")


def test_selftest_failure_exit_1(capsys, monkeypatch):
    from carnot_sard import acceptance
    monkeypatch.setattr(acceptance.step2, "codimension_bound", lambda q, prof=None: 0)
    code, out, _ = run(capsys, "selftest", "--only", "1")
    assert code == 1 and "FAIL" in out


def test_text_rendering():
    lines = cli.render_text({"b": [1, 2], "a": {"x": None, "y": True}, "c": [{"k": "1/2"}]})
    assert lines == ["a:", "  x: none", "  y: yes", "b: [1, 2]", "c:", "  -", "    k: 1/2"]


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "carnot_sard", "--version"], capture_output=True, text=True)
    assert done.returncode == 0 and "0.1.0" in done.stdout
