"""End-to-end command-line behavior: output shapes, exit codes, determinism."""

import json

import pytest

from gaussmap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- rank-table ----------------------------------------------------------------------


def test_rank_table_csv_output(capsys):
    code, out, _ = run(capsys, "rank-table", "--g", "3..5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "g,k,rank,dim_ker,rank_formula_ok"
    assert "5,2,1,0,true" in lines
    assert len(lines) == 1 + 2 + 2 + 3


def test_rank_table_single_cell_row(capsys):
    code, out, _ = run(capsys, "rank-table", "--g", "5", "--k", "2")
    assert code == 0
    assert out.strip().splitlines()[1] == "5,2,1,0,true"


def test_rank_table_rejects_genus_below_three(capsys):
    code, _, err = run(capsys, "rank-table", "--g", "2..3")
    assert code == 2
    assert "genus" in err


def test_rank_table_json_report(capsys):
    code, out, _ = run(capsys, "rank-table", "--g", "3", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["theorem"] == "T3.1" and report["passed"] is True
    assert len(report["checks"]) == 2


# -- genus cap -----------------------------------------------------------------------


def test_hard_genus_cap_is_enforced_and_overridable(capsys, monkeypatch):
    code, _, err = run(capsys, "rank-table", "--g", "13")
    assert code == 2 and "GAUSSMAP_MAX_GENUS" in err
    monkeypatch.setenv("GAUSSMAP_MAX_GENUS", "13")
    code, out, _ = run(capsys, "rank-table", "--g", "13", "--k", "6")
    assert code == 0
    assert out.strip().splitlines()[1] == "13,6,1,0,true"


def test_invalid_cap_value_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("GAUSSMAP_MAX_GENUS", "many")
    code, _, err = run(capsys, "rank-table", "--g", "5")
    assert code == 2 and "GAUSSMAP_MAX_GENUS" in err


# -- kernel --------------------------------------------------------------------------


def test_kernel_reports_agreeing_methods(capsys):
    code, out, _ = run(
        capsys, "kernel", "--g", "5", "--k", "1", "--method", "both"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["methods_agree"] is True
    assert payload["dimension"] == 1
    assert payload["basis"] == [{"1,4": "1", "2,3": "-3"}]
    assert payload["map"] == "mu_2"


def test_kernel_at_the_chain_end_is_empty(capsys):
    code, out, _ = run(capsys, "kernel", "--g", "7", "--k", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 0 and payload["basis"] == []


def test_kernel_level_out_of_range_is_usage_error(capsys):
    code, _, err = run(capsys, "kernel", "--g", "7", "--k", "4")
    assert code == 2 and "--k" in err


def test_kernel_requires_single_genus(capsys):
    code, _, err = run(capsys, "kernel", "--g", "5..6", "--k", "1")
    assert code == 2


# -- verify --------------------------------------------------------------------------


def test_verify_runs_a_suite_and_reports_timing_on_stderr(capsys):
    code, out, err = run(
        capsys,
        "verify", "--theorem", "T6.5", "--g", "5", "--k", "1",
        "--samples", "1", "--seed", "3",
    )
    assert code == 0
    report = json.loads(out)
    assert report["theorem"] == "T6.5" and report["passed"] is True
    assert report["seed"] == 3
    assert "timing" not in out
    assert "elapsed" in err


def test_verify_unknown_theorem_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--theorem", "T9.9", "--g", "5")
    assert code == 2


def test_verify_output_is_byte_identical_across_reruns(capsys):
    args = (
        "verify", "--theorem", "R4.1", "--g", "4", "--samples", "1",
        "--seed", "5",
    )
    code_a, out_a, _ = run(capsys, *args)
    code_b, out_b, _ = run(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_verify_markdown_format(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--theorem", "L6.2", "--g", "4", "--format", "md",
    )
    assert code == 0
    assert out.startswith("# Verification report: L6.2")


def test_verify_accepts_an_explicit_curve_file(capsys, tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(
        json.dumps(
            {"branch_points": ["0", "1", "-1", "2", "-2", "3", "-3", "1/2"]}
        )
    )
    code, out, _ = run(
        capsys, "verify", "--theorem", "T6.6", "--curve", str(path)
    )
    assert code == 0
    report = json.loads(out)
    assert report["genus"] == 3
    assert report["curve"]["branch_points"][-1] == "1/2"


def test_verify_curve_and_genus_conflict_is_usage_error(capsys):
    code, _, err = run(
        capsys,
        "verify", "--theorem", "T6.6", "--g", "4",
        "--curve", "0,1,-1,2,-2,3,-3,1/2",
    )
    assert code == 2 and "conflicts" in err


# -- rho -----------------------------------------------------------------------------


def test_rho_known_zero_and_nonzero_values(capsys):
    code, out, _ = run(
        capsys,
        "rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "1", "1",
    )
    assert code == 0 and json.loads(out)["value"] == "0"
    code, out, _ = run(
        capsys,
        "rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "1", "3",
    )
    assert code == 0
    assert json.loads(out)["value"] == "-1/322620641280000"


def test_rho_beyond_threshold_payload_still_exits_zero(capsys):
    code, out, _ = run(
        capsys,
        "rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "3", "3",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["error"]["error"] == "BeyondThreshold"
    assert payload["error"]["first_nonzero"] == {
        "h": 2, "l": 2, "value": "1/40327580160000"
    }


def test_rho_accepts_kernel_and_json_quadric_specs(capsys):
    code, out, _ = run(
        capsys,
        "rho", "--g", "5", "--quadric", "kernel:1,0", "--pair", "1", "1",
    )
    assert code == 0 and json.loads(out)["value"] == "0"
    code, out, _ = run(
        capsys,
        "rho", "--g", "5", "--quadric", '{"1,4": "1", "2,3": "-3"}',
        "--pair", "1", "1",
    )
    assert code == 0 and json.loads(out)["value"] == "0"


def test_rho_malformed_quadric_is_usage_error(capsys):
    for bad in ("basis:9,9", "kernel:1,5", "{]", '{"55": "1"}'):
        code, _, err = run(
            capsys, "rho", "--g", "5", "--quadric", bad, "--pair", "1", "1"
        )
        assert code == 2, bad


def test_rho_even_pair_is_usage_error(capsys):
    code, _, err = run(
        capsys,
        "rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "2", "2",
    )
    assert code == 2 and "odd" in err


# -- scan ----------------------------------------------------------------------------


def test_scan_classifies_corner_and_sampled_directions(capsys):
    code, out, _ = run(
        capsys, "scan", "--g", "4", "--samples", "6", "--seed", "1"
    )
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    items = [c["item"] for c in report["checks"]]
    assert any("direction (1,0)" in i for i in items)
    assert any("direction (0,1)" in i for i in items)
    assert any("direction (1,1)" in i for i in items)
    sampled = [
        c for c in report["checks"]
        if "direction (" in c["item"]
        and "(1,0)" not in c["item"]
        and "(0,1)" not in c["item"]
        and "(1,1)" not in c["item"]
    ]
    assert len(sampled) == 6
    bound = [c for c in report["checks"] if "bound" in c["item"]]
    assert bound and bound[0]["got"] == "6"


def test_scan_writes_deterministic_output_files(capsys, tmp_path):
    path = tmp_path / "scan.json"
    args = [
        "scan", "--g", "4", "--samples", "2", "--seed", "9",
        "--out", str(path),
    ]
    assert main(args) == 0
    capsys.readouterr()
    first = path.read_bytes()
    assert main(args) == 0
    capsys.readouterr()
    assert path.read_bytes() == first


# -- argparse-level usage errors -----------------------------------------------------


def test_missing_required_flags_exit_two(capsys):
    assert main(["rho", "--g", "3"]) == 2
    capsys.readouterr()
    assert main(["verify", "--g", "3"]) == 2
    capsys.readouterr()
    assert main(["kernel", "--g", "5"]) == 2
    capsys.readouterr()
    assert main(["verify", "--theorem", "T6.5"]) == 2  # no --g, no --curve
    capsys.readouterr()
