"""Deterministic report serialization."""

import json

from gaussmap.gaussian import rank_table
from gaussmap.reports import (
    CheckItem,
    RunConfig,
    VerificationReport,
    canonical_json_bytes,
    check,
    rank_table_csv,
)
from gaussmap.suites import verify_theorem


def sample_report(passing=True):
    return VerificationReport(
        theorem="T3.1",
        genus=3,
        k=0,
        curve=None,
        checks=(
            check("first", "zero", "zero", True),
            check("second", "nonzero", "nonzero" if passing else "0", passing),
        ),
        seed=7,
        config={"command": "verify"},
        timing_seconds=1.25,
    )


def test_report_passes_iff_every_item_passes():
    assert sample_report(True).passed
    assert not sample_report(False).passed
    assert json.loads(sample_report(False).to_json_bytes())["passed"] is False


def test_canonical_json_is_sorted_inented_and_newline_terminated():
    payload = {"b": 1, "a": [2, 3]}
    data = canonical_json_bytes(payload)
    assert data.endswith(b"\n")
    assert data.index(b'"a"') < data.index(b'"b"')
    assert json.loads(data) == payload


def test_timing_is_excluded_from_the_canonical_bytes():
    fast = sample_report()
    slow = VerificationReport(
        **{**fast.__dict__, "timing_seconds": 99.0}
    )
    assert fast.to_json_bytes() == slow.to_json_bytes()
    assert b"timing" not in fast.to_json_bytes()


def test_markdown_rendering_contains_items_and_verdict():
    text = sample_report().to_markdown()
    assert "T3.1" in text and "first" in text and "passed: yes" in text


def test_rank_table_csv_layout():
    table = rank_table(3, 4)
    lines = rank_table_csv(table).strip().splitlines()
    assert lines[0] == "g,k,rank,dim_ker,rank_formula_ok"
    assert lines[1] == "3,0,5,1,true"
    assert len(lines) == 1 + len(table.rows)


def test_run_config_round_trips_the_flags():
    cfg = RunConfig(
        command="verify",
        genus_min=3,
        genus_max=8,
        k=1,
        samples=4,
        seed=11,
        output_format="json",
        output_path="out.json",
    )
    echoed = cfg.to_json()
    assert echoed["genus"] == "3..8"
    assert echoed["k"] == 1 and echoed["seed"] == 11
    assert cfg.genus_label() == "3..8"
    assert RunConfig(command="x", genus_min=4, genus_max=4).genus_label() == 4


def test_suite_reports_are_rerun_stable():
    cfg = RunConfig(
        command="verify", genus_min=3, genus_max=4, seed=3, samples=1
    )
    first = verify_theorem("T6.6", cfg)
    second = verify_theorem("T6.6", cfg)
    assert first.to_json_bytes() == second.to_json_bytes()
    assert first.passed
