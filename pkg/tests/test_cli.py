"""End-to-end CLI runs through main(argv), checking payloads and exit codes."""

import json

import pytest

from coxforge.cli import main
from coxforge.picard_lattice import DivisorClass, LatticeContext
from coxforge.root_system import simple_roots, weyl_orbit


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert err == ""
    return json.loads(out)


def test_classify_json_and_table(capsys):
    payload = run_json(capsys, "classify", "--ctx", "2,3,4")
    assert payload == {"a": 2, "b": 3, "c": 4, "finite": True, "label": "E7"}
    code, out, _ = run(capsys, "classify", "--ctx", "2,3,4", "--format", "table")
    assert (code, out) == (0, "E7\n")
    payload = run_json(capsys, "classify", "--ctx", "2,4,4")
    assert payload["finite"] is False
    assert payload["label"] == "INFINITE"


def test_orbit_defaults_to_last_exceptional(capsys):
    payload = run_json(capsys, "orbit", "--ctx", "2,2,3")
    assert payload["count"] == 16
    ctx = LatticeContext(2, 2, 3)
    parsed = [DivisorClass.from_json(obj) for obj in payload["orbit"]]
    assert parsed == list(weyl_orbit(DivisorClass.exceptional(ctx, 5), simple_roots(ctx)))


def test_output_is_byte_deterministic(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run(capsys, "degree-one", "--ctx", "2,2,4")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    assert json.loads(outs.pop())["count"] == 32


def test_minimal_and_project(capsys):
    payload = run_json(capsys, "minimal", "--n", "2", "--r", "5")
    assert payload["count"] == 11
    payload = run_json(capsys, "project", "--n", "3", "--r", "6",
                       "--d", "1", "--m", "0,1,1,1,0,0", "--classify")
    assert payload["case"] == "SPECIAL"
    assert payload["target"] == {"n": 2, "r": 5}
    image = DivisorClass.from_json(payload["class"])
    assert image.h == (0,) and image.m == (0, 0, 0, -1, -1)


def test_decompose_table_and_degree_one(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "3", "--d", "5",
                       "--m", "3,3,2,5,1", "--format", "table")
    assert code == 0
    assert len(out.strip().splitlines()) == 5
    payload = run_json(capsys, "decompose", "--ctx", "2,2,3", "--d", "3",
                       "--m", "1,1,1,1,1", "--degree-one")
    parts = [DivisorClass.from_json(obj) for obj in payload["parts"]]
    ctx = LatticeContext(2, 2, 3)
    assert sum(parts, DivisorClass.zero(ctx)).m == (1, 1, 1, 1, 1)


def test_member_false_is_still_exit_zero(capsys):
    payload = run_json(capsys, "member", "--ctx", "2,2,3",
                       "--d", "1", "--m", "2,0,0,0,0")
    assert payload["member"] is False
    assert payload["certificate"] is not None
    payload = run_json(capsys, "member", "--ctx", "2,2,3",
                       "--d", "3", "--m", "1,1,1,1,1")
    assert payload == {"certificate": None, "member": True}


def test_section_pipeline_verbs(capsys):
    assert run_json(capsys, "h0", "--n", "2", "--r", "5",
                    "--d", "2", "--m", "1,1,1,1,1") == {"h0": 1}
    code, out, _ = run(capsys, "section", "--n", "2", "--r", "5",
                       "--d", "2", "--m", "1,1,1,1,1", "--format", "table")
    assert (code, out) == (0, "z_0*z_2 - z_1^2\n")
    payload = run_json(capsys, "mult", "--n", "2", "--r", "5",
                       "--d", "2", "--m", "1,1,1,1,1")
    assert payload == {"along_curve": 1, "at_points": [1, 1, 1, 1, 1]}
    payload = run_json(capsys, "check-generation", "--n", "2", "--r", "5",
                       "--d", "3", "--m", "1,1,1,1,1")
    assert payload == {"generated": True, "h0": 5, "span_dim": 5}
    payload = run_json(capsys, "h0", "--n", "2", "--r", "5", "--d", "2",
                       "--m", "1,1,1,1,1", "--params", "0,1/2,-1,7/3,4")
    assert payload == {"h0": 1}


def test_invariant_verbs(capsys):
    code, out, _ = run(capsys, "invariant", "build", "-I", "1", "--r", "5",
                       "--format", "table")
    assert (code, out) == (0, "x_1\n")
    payload = run_json(capsys, "invariant", "check", "-I", "1,2,3", "--r", "5")
    assert payload == {"checked": 1, "invariant": True}
    payload = run_json(capsys, "invariant", "check", "--all", "--r", "5")
    assert payload == {"checked": 16, "invariant": True}
    payload = run_json(capsys, "invariant", "class", "-I", "3,4,5", "--n", "2")
    assert DivisorClass.from_json(payload).m == (1, 1, 0, 0, 0)


def test_verify_quick_profile(capsys):
    code, out, _ = run(capsys, "verify", "--profile", "quick", "--seed", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["profile"] == "quick"
    assert payload["results"] and all(item["passed"] for item in payload["results"])


def test_usage_errors_exit_64(capsys):
    code, _, err = run(capsys, "no-such-verb")
    assert code == 64 and err
    code, _, err = run(capsys, "h0", "--n", "2", "--r", "5", "--d", "x",
                       "--m", "1,1,1,1,1")
    assert code == 64 and "usage error" in err
    code, _, err = run(capsys, "classify")
    assert code == 64
    code, _, err = run(capsys)
    assert code == 64


def test_precondition_exit_1_with_payload(capsys):
    code, out, err = run(capsys, "minimal", "--n", "2", "--r", "4")
    assert code == 1 and out == ""
    payload = json.loads(err)
    assert payload["error"]["type"] == "precondition"
    assert payload["error"]["field"] == "r"
    code, _, err = run(capsys, "section", "--n", "2", "--r", "5",
                       "--d", "1", "--m", "0,0,0,0,0")
    assert code == 1
    assert json.loads(err)["error"]["type"] == "precondition"


def test_cap_exit_2_with_payload(capsys, monkeypatch):
    code, out, err = run(capsys, "orbit", "--ctx", "2,2,3", "--cap", "5")
    assert code == 2 and out == ""
    payload = json.loads(err)
    assert payload["error"]["type"] == "cap"
    assert payload["error"]["cap"] == 5
    monkeypatch.setenv("COXFORGE_CAP", "5")
    code, _, err = run(capsys, "orbit", "--ctx", "2,2,3")
    assert code == 2
    assert json.loads(err)["error"]["cap"] == 5
