"""Command-line interface: exit codes, formats, determinism."""

import json

import pytest

from dxext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def result_of(out):
    """Unwrap the command/input/result JSON envelope."""
    data = json.loads(out)
    assert set(data) >= {"command", "input", "result"}
    return data["result"]


def test_ext_self_json(capsys):
    code, out, err = run(capsys, "ext-self", "--f", "x*y", "--max-deg", "5", "--format", "json")
    assert code == 0
    data = result_of(out)
    assert [lvl["dim"] for lvl in data["levels"]] == [1, 3, 7, 13, 21, 31]
    assert data["f"] == "x*y"
    # Timing goes to stderr only, keeping stdout deterministic.
    assert "wall" in err


def test_ext_self_csv_header(capsys):
    code, out, _ = run(capsys, "ext-self", "--f", "x*y", "--max-deg", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,dim,status"
    assert lines[1].startswith("0,1,")


def test_ext_self_text_default(capsys):
    code, out, _ = run(capsys, "ext-self", "--f", "x", "--max-deg", "2")
    assert code == 0
    assert "exact-zero" in out


def test_ext_module_json(capsys):
    code, out, _ = run(
        capsys, "ext-module", "--f", "x*y", "--model", "nlines-ic:2",
        "--max-deg", "4", "--format", "json",
    )
    assert code == 0
    data = result_of(out)
    assert [lvl["dim"] for lvl in data["ext1"]["levels"]] == [1, 2, 3, 4, 5]
    assert [lvl["dim"] for lvl in data["ext0"]["levels"]] == [1, 2, 3, 4, 5]


def test_ext_module_csv_is_ext1(capsys):
    code, out, _ = run(
        capsys, "ext-module", "--f", "x*y", "--model", "delta:2",
        "--max-deg", "3", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,dim,status"
    assert [line.split(",")[1] for line in lines[1:]] == ["0", "0", "0", "0"]


def test_twist_solution(capsys):
    code, out, _ = run(capsys, "twist", "--f", "x*y", "--alpha", "x dx^2", "--format", "json")
    assert code == 0
    data = result_of(out)
    assert data["beta"] == "x*dx^2 + 2*dx"
    assert data["identityChecked"] is True


def test_twist_no_solution_exit_code(capsys):
    code, out, err = run(capsys, "twist", "--f", "x*y", "--alpha", "dx")
    assert code == 1


def test_usage_error_nonpolynomial_f(capsys):
    code, _, err = run(capsys, "ext-self", "--f", "x + dx", "--max-deg", "2")
    assert code == 2
    code, _, _ = run(capsys, "ext-self", "--f", "x +", "--max-deg", "2")
    assert code == 2


def test_end_member_true_and_false(capsys):
    code, out, _ = run(capsys, "end-member", "--f", "x*y", "--h", "x dx", "--format", "json")
    assert code == 0
    assert result_of(out)["member"] is True
    code, out, _ = run(capsys, "end-member", "--f", "x*y", "--h", "dx", "--format", "json")
    assert code == 0
    assert result_of(out)["member"] is False


def test_act_requires_exactly_one_mode(capsys):
    code, _, _ = run(capsys, "act", "--f", "x*y", "--element", "1")
    assert code == 2
    code, _, _ = run(
        capsys, "act", "--f", "x*y", "--element", "1",
        "--alpha", "x dx", "--by", "dy",
    )
    assert code == 2


def test_act_self_ext1(capsys):
    code, out, _ = run(
        capsys, "act", "--f", "x*y", "--element", "1", "--alpha", "x dx",
        "--format", "json",
    )
    assert code == 0
    assert result_of(out)["class"] == "-y*dy"


def test_act_by_ext1_class(capsys):
    code, out, _ = run(
        capsys, "act", "--f", "x*y", "--element", "dx", "--by", "dy",
        "--format", "json",
    )
    assert code == 0
    assert result_of(out)["class"] == "dx*dy"


def test_act_ext0_needs_model(capsys):
    code, _, _ = run(
        capsys, "act", "--f", "x*y", "--element", "0,0=1", "--alpha", "x dx",
        "--on", "ext0",
    )
    assert code == 2


def test_act_ext0_on_delta(capsys):
    code, out, _ = run(
        capsys, "act", "--f", "x*y", "--element", "0,0=1", "--alpha", "x dx",
        "--on", "ext0", "--model", "delta:2", "--format", "json",
    )
    assert code == 0
    assert result_of(out)["terms"] == []


def test_rewrite_normal_form(capsys):
    code, out, _ = run(
        capsys, "rewrite", "--preset", "node-xy", "--element", "x dx^2",
        "--format", "json",
    )
    assert code == 0
    data = result_of(out)
    assert data["normalForm"] == "-2*y*dx*dy - 2*dx"
    assert data["inputIrreducible"] is False


def test_rewrite_unknown_preset(capsys):
    code, _, _ = run(capsys, "rewrite", "--preset", "nope", "--element", "x")
    assert code == 2


def test_confluence(capsys):
    code, out, _ = run(capsys, "confluence", "--preset", "node-xy", "--max-deg", "5", "--format", "json")
    assert code == 0
    data = result_of(out)
    assert data["confluent"] is True
    assert data["violations"] == 0


def test_irreducible_dims(capsys):
    code, out, _ = run(
        capsys, "irreducible-dims", "--preset", "node-xy", "--max-deg", "5",
        "--format", "json",
    )
    assert code == 0
    assert [lvl["dim"] for lvl in result_of(out)["levels"]] == [1, 3, 7, 13, 21, 31]


CURVE_JSON = json.dumps({
    "points": [{"kind": "multicross", "branches": 2}],
    "localSystem": {
        "pointSupported": False,
        "eigenvalues": [[["unity"], ["unity"]]],
    },
})


def test_curve_predict_inline_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "curve-predict", "--curve", CURVE_JSON, "--simple", "--format", "json")
    assert code == 0
    assert result_of(out)["verdict"] == "NotVanishes"
    path = tmp_path / "curve.json"
    path.write_text(CURVE_JSON)
    code, out2, _ = run(capsys, "curve-predict", "--curve", f"@{path}", "--simple", "--format", "json")
    assert code == 0
    assert json.loads(out2) == json.loads(out)


def test_curve_predict_bad_json(capsys):
    code, _, _ = run(capsys, "curve-predict", "--curve", "{not json")
    assert code == 2


def test_curve_crosscheck(capsys):
    code, out, _ = run(
        capsys, "curve-crosscheck", "--n", "2", "--model", "delta",
        "--max-deg", "3", "--format", "json",
    )
    assert code == 0
    data = result_of(out)
    assert data["agree"] is True and data["predicted"] == "Vanishes"


def test_quotient_isotypic_with_molien(capsys):
    code, out, _ = run(
        capsys, "quotient-isotypic", "--group", "cyclic:2:1,1",
        "--character", "chi:1,0", "--max-deg", "6", "--molien-check",
        "--format", "json",
    )
    assert code == 0
    data = result_of(out)
    assert data["dims"] == [0, 2, 0, 4, 0, 6, 0]
    assert data["molienAgrees"] is True


def test_quotient_isotypic_ic_flag(capsys):
    code, out, _ = run(
        capsys, "quotient-isotypic", "--group", "cyclic:2:1,1",
        "--character", "chi:1,0", "--max-deg", "4", "--ic", "--format", "json",
    )
    assert code == 0
    data = result_of(out)
    assert data["icCohomologicalDegree"] == 1
    assert data["icDims"] == [0, 2, 0, 4, 0]


def test_quotient_isotypic_precondition_failure(capsys):
    # A pseudo-reflection makes the IC route refuse to answer.
    code, _, _ = run(
        capsys, "quotient-isotypic", "--group", "cyclic:2:1,0",
        "--character", "chi:1,0", "--ic",
    )
    assert code == 1


def test_quotient_rend(capsys):
    code, out, _ = run(
        capsys, "quotient-rend", "--group", "cyclic:2:1,1", "--max-deg", "4",
        "--format", "json",
    )
    assert code == 0
    data = result_of(out)
    assert data["dims"][2] == 4 and data["dims"][4] == 16


def test_quotient_cech(capsys):
    code, out, _ = run(
        capsys, "quotient-cech", "--group", "cyclic:2:1,1",
        "--character", "chi:0,0", "--max-deg", "4", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,dim"
    assert [line.split(",")[1] for line in lines[1:]] == ["1", "0", "3", "0", "5"]


def test_verify_node_suite(capsys):
    code, out, err = run(capsys, "verify", "node")
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "nope"])
    assert info.value.code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "table.json"
    code, out, _ = run(
        capsys, "ext-self", "--f", "x*y", "--max-deg", "3", "--format", "json",
        "--output", str(target),
    )
    assert code == 0
    assert out == ""
    data = json.loads(target.read_text())["result"]
    assert [lvl["dim"] for lvl in data["levels"]] == [1, 3, 7, 13]


def test_stdout_deterministic(capsys):
    _, first, _ = run(capsys, "ext-self", "--f", "x*y", "--max-deg", "4", "--format", "json")
    _, second, _ = run(capsys, "ext-self", "--f", "x*y", "--max-deg", "4", "--format", "json")
    assert first == second


def test_no_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
