import io
import json

import pytest

from fcakit.cli import RunConfig, UsageError, main, parse_args, run

from conftest import FIXTURES

TABLE_CSV = str(FIXTURES / "memberships4x4.csv")
TABLE_CXT = str(FIXTURES / "memberships4x4_theta05.cxt")


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        config = parse_args(argv)
    except UsageError as exc:
        return 1, "", f"error: {exc}\n"
    code = run(config, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_concepts_text_output_is_lectic():
    code, out, err = invoke(["concepts", "--format", "csv", "--theta", "0.5", "--input", TABLE_CSV])
    assert code == 0
    assert err == ""
    assert out.splitlines() == [
        "P1 P2 P3 P4 | ",
        "P1 | S1",
        "P2 P3 P4 | S3",
        "P2 P3 | S2 S3",
        "P3 P4 | S3 S4",
        "P3 | S2 S3 S4",
        " | S1 S2 S3 S4",
    ]


def test_concepts_from_cxt_matches_csv_route():
    code_a, out_a, _ = invoke(["concepts", "--format", "csv", "--theta", "0.5", "--input", TABLE_CSV])
    code_b, out_b, _ = invoke(["concepts", "--format", "cxt", "--input", TABLE_CXT])
    assert code_a == code_b == 0
    assert out_a == out_b


def test_concepts_json_schema():
    code, out, _ = invoke(
        ["concepts", "--format", "csv", "--theta", "0.5", "--json", "--input", TABLE_CSV]
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"concepts"}
    assert len(payload["concepts"]) == 7
    assert payload["concepts"][1] == {"extent": ["P1"], "intent": ["S1"]}
    for entry in payload["concepts"]:
        assert set(entry) == {"extent", "intent"}


def test_itemsets_text_output():
    code, out, _ = invoke(["itemsets", "--format", "cxt", "--input", TABLE_CXT])
    assert code == 0
    assert out.splitlines() == [
        "",
        "S1",
        "S3",
        "S2 S3",
        "S3 S4",
        "S2 S3 S4",
        "S1 S2 S3 S4",
    ]


def test_itemsets_json_schema():
    code, out, _ = invoke(["itemsets", "--format", "cxt", "--json", "--input", TABLE_CXT])
    assert code == 0
    payload = json.loads(out)
    assert payload["itemsets"][0] == []
    assert payload["itemsets"][-1] == ["S1", "S2", "S3", "S4"]


def test_graded_text_output():
    code, out, _ = invoke(["graded", "--format", "csv", "--theta", "0.5", "--input", TABLE_CSV])
    assert code == 0
    lines = out.splitlines()
    defined = [l for l in lines if "| grade " in l and "undefined" not in l]
    undefined = [l for l in lines if "grade undefined" in l]
    assert len(defined) == 5
    assert len(undefined) == 2
    assert "P2 P3 | S2 S3 | grade 4 4" in lines
    assert "P1 | S1 | grade 1 1" in lines
    assert lines[-1] == "chain: 1 4"


def test_graded_json_schema():
    code, out, _ = invoke(
        ["graded", "--format", "csv", "--theta", "0.5", "--json", "--input", TABLE_CSV]
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"concepts", "chain"}
    grades = [e["grade"] for e in payload["concepts"]]
    assert grades.count(None) == 2
    assert [4.0, 4.0] in grades
    assert payload["chain"] == [1.0, 4.0]
    for entry in payload["concepts"]:
        assert set(entry) == {"extent", "intent", "grade"}


def test_iterate_reports_origin_fixed_point():
    code, out, _ = invoke(["iterate", "--format", "csv", "--input", TABLE_CSV])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k = 0.1; seed = (4, 4)"
    assert lines[-1].startswith(
        "fixed point (0.000000000, 0.000000000); k = 0.1; steps = 10"
    )


def test_iterate_json_schema():
    code, out, _ = invoke(["iterate", "--format", "csv", "--json", "--input", TABLE_CSV])
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 0.1
    assert payload["seed"] == [4.0, 4.0]
    assert payload["steps"] == 10
    assert payload["certified_bound"] <= 1e-9
    assert len(payload["trace"]) == 11
    assert payload["trace"][0]["center"] == [4.0, 4.0]
    bounds = [t["bound"] for t in payload["trace"]]
    assert all(a >= b for a, b in zip(bounds, bounds[1:]))


def test_iterate_honors_tol_flag():
    code, out, _ = invoke(
        ["iterate", "--format", "csv", "--tol", "1e-3", "--json", "--input", TABLE_CSV]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["steps"] == 4
    assert payload["certified_bound"] <= 1e-3


def test_threshold_emits_canonical_cxt(tmp_path):
    code, out, _ = invoke(["threshold", "--format", "csv", "--theta", "0.5", "--input", TABLE_CSV])
    assert code == 0
    assert out == (FIXTURES / "memberships4x4_theta05.cxt").read_text(encoding="utf-8")


def test_export_dot_shape():
    code, out, _ = invoke(["export-dot", "--format", "cxt", "--input", TABLE_CXT])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "digraph lattice {"
    assert lines[-1] == "}"
    nodes = [l for l in lines if "[label=" in l]
    edges = [l for l in lines if "->" in l]
    assert len(nodes) == 7
    assert len(edges) == 8
    assert "  c1 -> c0;" in lines


def test_output_flag_writes_the_file(tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = invoke(
        ["concepts", "--format", "cxt", "--output", str(target), "--input", TABLE_CXT]
    )
    assert code == 0
    assert out == ""
    assert "P1 | S1" in target.read_text(encoding="utf-8")


def test_output_is_deterministic():
    for argv in (
        ["concepts", "--format", "csv", "--theta", "0.5", "--input", TABLE_CSV],
        ["graded", "--format", "csv", "--theta", "0.5", "--json", "--input", TABLE_CSV],
        ["iterate", "--format", "csv", "--input", TABLE_CSV],
        ["export-dot", "--format", "cxt", "--input", TABLE_CXT],
    ):
        first = invoke(argv)
        second = invoke(argv)
        assert first == second


def test_missing_file_is_a_parse_error():
    code, out, err = invoke(["concepts", "--format", "cxt", "--input", "/no/such/file.cxt"])
    assert code == 2
    assert "cannot read" in err


def test_malformed_cxt_is_a_parse_error(tmp_path):
    bad = tmp_path / "bad.cxt"
    bad.write_text("B\n\n1\n1\n\no\na\n?\n", encoding="utf-8")
    code, _, err = invoke(["concepts", "--format", "cxt", "--input", str(bad)])
    assert code == 2
    assert "line 8" in err


def test_malformed_csv_is_a_parse_error(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text(",S1\nP1,2.5\n", encoding="utf-8")
    code, _, err = invoke(["graded", "--format", "csv", "--theta", "0.5", "--input", str(bad)])
    assert code == 2
    assert "line 2" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["concepts", "--format", "csv", "--input", TABLE_CSV],
        ["concepts", "--format", "cxt", "--theta", "0.5", "--input", TABLE_CXT],
        ["graded", "--format", "cxt", "--input", TABLE_CXT],
        ["graded", "--format", "csv", "--input", TABLE_CSV],
        ["threshold", "--format", "cxt", "--input", TABLE_CXT],
        ["iterate", "--format", "cxt", "--input", TABLE_CXT],
        ["concepts", "--input", TABLE_CXT],
        ["concepts", "--format", "cxt"],
        ["concepts", "--format", "tsv", "--input", TABLE_CSV],
        ["iterate", "--format", "csv", "--tol", "0", "--input", TABLE_CSV],
        ["iterate", "--format", "csv", "--max-iter", "0", "--input", TABLE_CSV],
        ["frobnicate", "--format", "cxt", "--input", TABLE_CXT],
        [],
    ],
)
def test_usage_errors_exit_one(argv):
    code, out, err = invoke(argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error: ")


def test_domain_error_exits_one(tmp_path):
    # threshold outside the unit interval is a domain error, not a parse error
    code, _, err = invoke(
        ["concepts", "--format", "csv", "--theta", "1.5", "--input", TABLE_CSV]
    )
    assert code == 1
    assert "outside [0, 1]" in err


def test_unit_shrink_factor_exits_one(tmp_path):
    flat = tmp_path / "flat.csv"
    flat.write_text(",a\no,1\n", encoding="utf-8")
    code, _, err = invoke(["iterate", "--format", "csv", "--input", str(flat)])
    assert code == 1
    assert "(0, 1)" in err


def test_non_convergence_exits_three():
    code, _, err = invoke(
        ["iterate", "--format", "csv", "--max-iter", "3", "--input", TABLE_CSV]
    )
    assert code == 3
    assert "no convergence within 3 steps" in err


def test_main_returns_exit_code(capsys):
    assert main(["concepts", "--format", "cxt", "--input", TABLE_CXT]) == 0
    captured = capsys.readouterr()
    assert "P1 | S1" in captured.out
    assert main(["concepts", "--format", "cxt", "--input", "/missing.cxt"]) == 2
    assert main(["bogus"]) == 1


def test_run_validates_config_directly():
    bad = RunConfig(command="graded", input_path=TABLE_CSV, format="cxt")
    err = io.StringIO()
    assert run(bad, out=io.StringIO(), err=err) == 1
    assert "requires --format csv" in err.getvalue()


def test_run_rejects_bad_tolerance_and_budget():
    # config invariants hold even when run is driven without the parser
    for bad in (
        RunConfig(command="iterate", input_path=TABLE_CSV, format="csv", tol=0.0),
        RunConfig(command="iterate", input_path=TABLE_CSV, format="csv", tol=-1e-9),
        RunConfig(command="iterate", input_path=TABLE_CSV, format="csv", max_iter=0),
    ):
        err = io.StringIO()
        assert run(bad, out=io.StringIO(), err=err) == 1
        assert "must be" in err.getvalue()


def test_unwritable_output_is_reported(tmp_path):
    target = tmp_path / "no" / "dir" / "out.txt"
    code, _, err = invoke(
        ["concepts", "--format", "cxt", "--output", str(target), "--input", TABLE_CXT]
    )
    assert code == 2
    assert "cannot write" in err
