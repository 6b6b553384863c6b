import json

import pytest

from blockfusion import cli
from blockfusion import workbench as wb


def test_scenario_roundtrip():
    s = wb.catalog()[1]
    assert wb.scenario_from_dict(s.to_dict()) == s


def test_unknown_scenario_fields_rejected():
    d = wb.catalog()[0].to_dict()
    d["extra"] = 1
    with pytest.raises(ValueError, match="unknown"):
        wb.scenario_from_dict(d)


def test_future_schema_rejected():
    d = wb.catalog()[0].to_dict()
    d["schema"] = 2
    with pytest.raises(ValueError, match="schema"):
        wb.scenario_from_dict(d)


def test_missing_field_rejected():
    d = wb.catalog()[0].to_dict()
    del d["gens_H"]
    with pytest.raises(ValueError, match="gens_H"):
        wb.scenario_from_dict(d)


def test_catalog_shape():
    cat = wb.catalog()
    assert len(cat) == 5
    assert len({s.name for s in cat}) == 5
    pairs = wb.morita_catalog()
    assert len(pairs) == 7  # one identity pair per scenario + two relabelings


def test_trivial_scenario_runs_clean():
    r = wb.run_scenario(wb.catalog()[0])
    assert r.passed()
    assert r.invariants["|E|"] == 1
    assert r.invariants["|F|"] == 1


def test_mixed_quotient_scenario_invariants():
    r = wb.run_scenario(wb.catalog()[1])
    assert r.passed()
    assert r.invariants["|E|"] == 2
    assert r.invariants["|F|"] == 2
    assert r.invariants["quotient_order"] == 2
    # every pass carries a witness
    assert all(c.witness is not None for c in r.checks)


def test_classical_scenario_has_trivial_degrees():
    r = wb.run_scenario(wb.catalog()[3])
    assert r.passed()
    assert r.invariants["quotient_order"] == 1
    fusion = next(c for c in r.checks if c.name == "fusion")
    assert fusion.witness["pair_degrees"] == [0, 0]


def test_failed_stage_skips_the_rest():
    s = wb.Scenario(name="bad", p=3, degree=3,
                    gens_g=["(0 1)", "(0 1 2)"], gens_h=["(0 1 2)"],
                    block=7)
    r = wb.run_scenario(s)
    assert r.checks[0].status == "fail"
    assert "out of range" in r.checks[0].witness["error"]
    assert all(c.status == "inconclusive" for c in r.checks[1:])


def test_partial_pipeline_stops_at_requested_stage():
    r = wb.run_scenario(wb.catalog()[1], through="brauer")
    assert [c.name for c in r.checks] == \
        ["blocks", "extension", "points", "brauer"]
    assert r.passed()


def test_emit_empty_report_is_versioned_json():
    d = json.loads(wb.emit(wb.Report()).decode())
    assert d["schema"] == wb.SCHEMA_VERSION
    assert d["checks"] == []


def test_emit_parse_roundtrip():
    r = wb.run_scenario(wb.catalog()[0])
    assert wb.emit(wb.parse_report(wb.emit(r))) == wb.emit(r)


def test_emit_text_format():
    r = wb.run_scenario(wb.catalog()[0])
    text = wb.emit(r, "text").decode()
    assert "blocks" in text and "pass" in text
    with pytest.raises(ValueError, match="format"):
        wb.emit(r, "yaml")


def test_identity_morita_pair_passes():
    ms = wb.morita_catalog()[1]  # identity pair on the S3/C3 scenario
    r = wb.verify_morita(ms)
    assert r.passed()
    assert r.invariants["|F|"] == 2


def test_relabeled_morita_pair_passes():
    ms = next(m for m in wb.morita_catalog() if m.name == "SC1-relabeled")
    r = wb.verify_morita(ms)
    assert r.passed()


def test_pair_schema_rejects_unknown_bimodule():
    d = wb.morita_catalog()[0].to_dict()
    d["bimodule"] = "custom"
    with pytest.raises(ValueError, match="bimodule"):
        wb.morita_from_dict(d)


def test_cli_stage_commands(tmp_path):
    sc = tmp_path / "sc1.json"
    sc.write_text(json.dumps(wb.catalog()[1].to_dict()))
    out = tmp_path / "report.json"
    assert cli.main(["fusion", str(sc), "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["invariants"]["|E|"] == 2
    assert [c["name"] for c in d["checks"]][-1] == "fusion"


def test_cli_seed_recorded_and_deterministic(tmp_path):
    sc = tmp_path / "sc1.json"
    sc.write_text(json.dumps(wb.catalog()[1].to_dict()))
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["verify", str(sc), "--seed", "7", "--out", str(a)]) == 0
    assert cli.main(["verify", str(sc), "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["seed"] == 7


def test_cli_catalog_listing(capsys):
    assert cli.main(["catalog"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert "SC1-S3-over-C3" in d["catalog"]


def test_cli_rejects_oversized_groups(tmp_path):
    sc = tmp_path / "sc.json"
    sc.write_text(json.dumps(wb.catalog()[1].to_dict()))
    out = tmp_path / "r.json"
    assert cli.main(["blocks", str(sc), "--cap-order", "2",
                     "--out", str(out)]) == 1
    d = json.loads(out.read_text())
    assert d["checks"][0]["status"] == "fail"


def test_cli_verify_morita(tmp_path):
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps(wb.morita_catalog()[1].to_dict()))
    assert cli.main(["verify-morita", str(pair), "--format", "text"]) == 0
