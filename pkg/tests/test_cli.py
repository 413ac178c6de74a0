"""Command-line surface, driven in-process through main()."""

import json
from pathlib import Path

import pytest

import isd
from isd.cli import main

BUNDLED = str(Path(isd.__file__).parent / "data" / "news_pipeline.json")

MEASURE_LABELS = [
    "Volume",
    "Delay",
    "Scope",
    "Granularity",
    "Variety",
    "Duration",
    "SamplingRate",
    "Aggregation",
    "Coverage",
    "Distortion",
    "Mismatch",
]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_measure_minimal_inputs(capsys):
    code, out, err = run(capsys, "measure", BUNDLED, "--info", "capture")
    assert code == 0 and err == ""
    for label in MEASURE_LABELS:
        assert label in out
    assert "Volume        3" in out
    assert "Delay         1" in out
    assert "not computed: missing" in out  # variety, coverage, mismatch


def test_measure_full_inputs(capsys):
    code, out, _ = run(
        capsys,
        "measure",
        BUNDLED,
        "--info",
        "capture",
        "--relations",
        "same_source",
        "--target",
        "uplink",
        "--coverage-target",
        "camera,recorder,notebook",
    )
    assert code == 0
    assert "Variety       2" in out
    assert "Coverage      1" in out
    assert "Mismatch      30" in out
    assert "not computed" not in out


def test_measure_json_output(capsys):
    code, out, _ = run(
        capsys, "measure", BUNDLED, "--info", "capture", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["title"] == "measures: capture"
    rows = {
        row["label"]: row["value"]
        for section in doc["sections"]
        for row in section["rows"]
    }
    assert rows["Volume"] == "3"
    assert rows["SamplingRate"] == "1"
    assert [r for r in MEASURE_LABELS if r not in rows] == []


def test_measure_unknown_info_fails(capsys):
    code, out, err = run(capsys, "measure", BUNDLED, "--info", "ether")
    assert code == 2
    assert "error:" in err


def test_measure_requires_info_choice_when_ambiguous(capsys):
    code, _, err = run(capsys, "measure", BUNDLED)
    assert code == 2
    assert "--info" in err


def test_measure_explicit_mu_weights(capsys):
    code, out, _ = run(
        capsys,
        "measure",
        BUNDLED,
        "--info",
        "capture",
        "--mu",
        "explicit",
        "--mu-weights",
        "0=1,1=1/2,2=1/2",
    )
    assert code == 0
    assert "Delay         1" in out


def test_analyze_grid(capsys):
    code, out, _ = run(capsys, "analyze", BUNDLED)
    assert code == 0
    lines = out.splitlines()
    scope_row = next(l for l in lines if l.strip().startswith("Scope "))
    cells = scope_row.split()
    assert cells.count("-") == 2  # both transmission hops
    agg_row = next(l for l in lines if l.strip().startswith("Aggregation"))
    assert agg_row.split()[1] == "-"  # collection cannot aggregate
    assert "measures the configuration can move  11" in out
    assert "Delay         30" in out


def test_verify_filtered(capsys):
    code, out, _ = run(
        capsys, "verify", "--seed", "3", "--trials", "25",
        "--filter", "radar_range_scaling,network_value_bounds",
    )
    assert code == 0
    assert "radar_range_scaling" in out
    assert "network_value_bounds" in out
    assert "entropy_volume_bound" not in out
    assert "sampling threshold" in out


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--filter", "astrology")
    assert code == 2
    assert "astrology" in err


def test_scenario_runs(capsys):
    code, out, _ = run(capsys, "scenario", "news_pipeline")
    assert code == 0
    assert "delays additive" in out
    assert "collapsed delay" in out


def test_scenario_unknown(capsys):
    code, _, err = run(capsys, "scenario", "soap_opera")
    assert code == 2
    assert "news_pipeline" in err  # lists what exists


def test_output_file_written(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "verify",
        "--trials",
        "10",
        "--filter",
        "network_value_bounds",
        "--format",
        "json",
        "--output",
        str(dest),
    )
    assert code == 0
    payload = json.loads(dest.read_text(encoding="utf-8"))
    assert payload["ok"] is True
    assert payload["provenance"]["trials"] == "10"


def test_missing_document_is_clean_error(capsys, tmp_path):
    code, _, err = run(capsys, "measure", str(tmp_path / "gone.json"))
    assert code == 2
    assert "error:" in err


def test_no_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
