"""Scenario parsing, report round trips, sweeps, demos, CLI verbs."""

import json

import pytest

from gptcast.cli import main
from gptcast.decisions import StateSet, analyze, broadcaster_exists, jointly_distinguishable
from gptcast.rationals import rat
from gptcast.reports import (
    canonical_bytes,
    decision_doc,
    load_report,
    verify_report,
    write_report,
)
from gptcast.scenario import ScenarioError, parse_rational, parse_scenario
from gptcast.spaces import make_square_gbit
from gptcast.sweeps import random_state, sweep_doc, sweep_scenario

SQUARE = make_square_gbit()


def scenario_doc(task, states, composite=None, space=None):
    doc = {"task": task, "space": space or {"builtin": "square"}, "states": states}
    if composite is not None:
        doc["composite"] = composite
    return doc


# -- scenario parsing -----------------------------------------------------------


def test_parse_rational_grammar():
    assert parse_rational("3/7", "x") == rat(3, 7)
    assert parse_rational("-4", "x") == rat(-4)
    assert parse_rational(5, "x") == rat(5)
    for bad in ("0.5", "1e3", "1/0", True, 0.5, "a/b", ""):
        with pytest.raises(ScenarioError, match="x"):
            parse_rational(bad, "x")


def test_malformed_rational_names_the_field():
    doc = scenario_doc("broadcast", [["1/0", "0", "1"]])
    with pytest.raises(ScenarioError, match=r"states\[0\]\[0\].*1/0"):
        parse_scenario(doc)


def test_unknown_task_rejected():
    with pytest.raises(ScenarioError, match="task"):
        parse_scenario(scenario_doc("teleport", []))


def test_unknown_fields_rejected():
    doc = scenario_doc("broadcast", [])
    doc["extra"] = 1
    with pytest.raises(ScenarioError, match="unexpected fields.*extra"):
        parse_scenario(doc)


def test_vertex_references_resolve():
    s = parse_scenario(scenario_doc("distinguish", ["vertex:0", "vertex:3"]))
    assert s.states == (SQUARE.vertices[0], SQUARE.vertices[3])


def test_vertex_reference_out_of_range():
    with pytest.raises(ScenarioError, match=r"states\[0\].*out of range"):
        parse_scenario(scenario_doc("distinguish", ["vertex:9"]))


def test_state_dimension_mismatch_named():
    with pytest.raises(ScenarioError, match=r"states\[1\].*2 coordinates"):
        parse_scenario(scenario_doc("broadcast", [["0", "0", "1"], ["0", "1"]]))


def test_builtin_spaces():
    sq = parse_scenario(scenario_doc("broadcast", [])).space
    assert sq == SQUARE
    tri = parse_scenario(
        scenario_doc("broadcast", [], space={"builtin": "classical", "n": 3})
    ).space
    assert len(tri.vertices) == 3
    pent = parse_scenario(
        scenario_doc("broadcast", [], space={"builtin": "polygon", "n": 5})
    ).space
    assert len(pent.vertices) == 5
    with pytest.raises(ScenarioError, match="unknown space"):
        parse_scenario(scenario_doc("broadcast", [], space={"builtin": "blob"}))


def test_custom_space_from_vertices():
    spec = {
        "name": "segment",
        "vertices": [["0", "1"], ["1", "0"]],
        "unit": ["1", "1"],
    }
    s = parse_scenario(scenario_doc("distinguish", [["1/2", "1/2"]], space=spec))
    assert s.space.span_dim == 2


def test_composite_choices():
    assert parse_scenario(scenario_doc("clone", [])).composite.variant == "max"
    assert (
        parse_scenario(scenario_doc("clone", [], composite="min")).composite.variant
        == "min"
    )
    with pytest.raises(ScenarioError, match="composite"):
        parse_scenario(scenario_doc("clone", [], composite="median"))


def test_sweep_fields_validated():
    doc = {"task": "sweep", "space": {"builtin": "square"}, "states": [],
           "seed": 1, "trials": 5, "size": 2}
    s = parse_scenario(doc)
    assert (s.seed, s.trials, s.size) == (1, 5, 2)
    doc["trials"] = -1
    with pytest.raises(ScenarioError, match="trials"):
        parse_scenario(doc)
    with pytest.raises(ScenarioError, match="seed/trials/size"):
        parse_scenario(scenario_doc("broadcast", []) | {"seed": 3})


# -- reports ----------------------------------------------------------------------


def run_scenario(doc):
    scenario = parse_scenario(doc)
    ss = StateSet(scenario.space, scenario.states)
    if scenario.task == "distinguish":
        report = jointly_distinguishable(ss)
    elif scenario.task == "broadcast":
        report = broadcaster_exists(ss, scenario.composite)
    else:
        report = analyze(ss, scenario.composite)
    return scenario, report


def test_yes_report_roundtrip_and_verify(tmp_path):
    scenario, report = run_scenario(scenario_doc("distinguish", ["vertex:0", "vertex:3"]))
    doc = decision_doc(scenario, report)
    path = tmp_path / "r.json"
    write_report(str(path), doc)
    loaded = load_report(str(path))
    ok, checks = verify_report(loaded)
    assert ok
    assert dict(checks) == {"measurement_valid": True, "delta_conditions": True}


def test_no_report_certificate_verifies(tmp_path):
    scenario, report = run_scenario(
        scenario_doc("broadcast", ["vertex:0", "vertex:1", "vertex:2"])
    )
    doc = decision_doc(scenario, report)
    ok, checks = verify_report(json.loads(canonical_bytes(doc)))
    assert ok
    assert dict(checks)["farkas_certificate"]


def test_tampered_witness_fails_verification():
    scenario, report = run_scenario(scenario_doc("distinguish", ["vertex:0", "vertex:3"]))
    doc = json.loads(canonical_bytes(decision_doc(scenario, report)))
    doc["witness"]["effects"][0][0] = "1/3"
    ok, checks = verify_report(doc)
    assert not ok


def test_tampered_certificate_fails_verification():
    scenario, report = run_scenario(
        scenario_doc("broadcast", ["vertex:0", "vertex:1", "vertex:2"])
    )
    doc = json.loads(canonical_bytes(decision_doc(scenario, report)))
    doc["certificate"]["eq_multipliers"][0] = "17/3"
    ok, _ = verify_report(doc)
    assert not ok


def test_analyze_cover_report_verifies():
    scenario, report = run_scenario(
        scenario_doc("analyze", ["vertex:0", "vertex:3", ["0", "0", "1"]])
    )
    doc = json.loads(canonical_bytes(decision_doc(scenario, report)))
    assert doc["witness"]["kind"] == "simplex_cover"
    ok, checks = verify_report(doc)
    assert ok
    assert dict(checks)["inputs_covered_by_generators"]


def test_reports_are_byte_deterministic():
    doc_a = decision_doc(*run_scenario(scenario_doc("analyze", ["vertex:0", "vertex:3"])))
    doc_b = decision_doc(*run_scenario(scenario_doc("analyze", ["vertex:0", "vertex:3"])))
    assert canonical_bytes(doc_a) == canonical_bytes(doc_b)


# -- sweeps -----------------------------------------------------------------------


def test_sweep_zero_trials_empty_summary():
    doc = sweep_doc(sweep_scenario("square", 2, 0, 9))
    assert doc["summary"] == {}
    assert doc["results"] == {}
    assert doc["disagreements"] == []


def test_sweep_deterministic_and_all_agree():
    a = sweep_doc(sweep_scenario("square", 2, 8, 3))
    b = sweep_doc(sweep_scenario("square", 2, 8, 3))
    assert canonical_bytes(a) == canonical_bytes(b)
    assert a["summary"]["clone_iff_distinguish_max_agreed"] == 8
    assert a["summary"]["clone_iff_distinguish_min_agreed"] == 8
    assert a["summary"]["tensor_invariance_agreed"] == 8
    assert not a["disagreements"]
    ok, _ = verify_report(a)
    assert ok


def test_sweep_unknown_family():
    with pytest.raises(ScenarioError, match="family"):
        sweep_scenario("hexagon", 2, 1, 0)


def test_random_state_is_normalized_member():
    import random

    rng = random.Random(5)
    for _ in range(20):
        s = random_state(SQUARE, rng)
        assert sum(c * u for c, u in zip(s, SQUARE.unit)) == 1
        assert SQUARE.omega.member(s).is_inside


# -- demos and CLI ------------------------------------------------------------------


def test_demo_catalog_runs(capsys, tmp_path):
    for name, expected in [
        ("classical-broadcast", "verdict: yes"),
        ("gbit-three-vertices", "verdict: no"),
        ("gbit-distinguishable-pair", "verdict: yes"),
    ]:
        path = tmp_path / f"{name}.json"
        assert main(["demo", name, "--report", str(path), "--verify"]) == 0
        out = capsys.readouterr().out
        assert expected in out
        assert "FAILED" not in out
        ok, _ = verify_report(load_report(str(path)))
        assert ok


def test_demo_listing(capsys):
    assert main(["demo"]) == 0
    out = capsys.readouterr().out
    assert "classical-broadcast" in out
    assert "gbit-three-vertices" in out
    assert "fixed-point-compression" in out


def test_demo_unknown_name(capsys):
    assert main(["demo", "nonesuch"]) == 1


def test_compression_demo_within_tolerance(capsys):
    assert main(["demo", "fixed-point-compression", "--tolerance", "1/1000000000"]) == 0
    out = capsys.readouterr().out
    assert "within_tolerance: True" in out


def test_cli_run_and_verify_roundtrip(tmp_path, capsys):
    scn = tmp_path / "scn.json"
    scn.write_text(json.dumps(scenario_doc("broadcast", ["vertex:0", "vertex:3"])))
    report = tmp_path / "report.json"
    assert main(["run", str(scn), "--report", str(report), "--verify"]) == 0
    assert main(["verify", str(report)]) == 0
    out = capsys.readouterr().out
    assert "report verifies" in out


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(scenario_doc("broadcast", [["1/0", "0", "1"]])))
    assert main(["run", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "states[0][0]" in err

    scn = tmp_path / "scn.json"
    scn.write_text(json.dumps(scenario_doc("distinguish", ["vertex:0", "vertex:3"])))
    report = tmp_path / "report.json"
    assert main(["run", str(scn), "--report", str(report)]) == 0
    doc = load_report(str(report))
    doc["witness"]["effects"][0][0] = "0"
    write_report(str(report), doc)
    capsys.readouterr()
    assert main(["verify", str(report)]) == 2
    assert "DOES NOT VERIFY" in capsys.readouterr().out


def test_cli_sweep_report_byte_identical(tmp_path, capsys):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["sweep", "--space", "bit", "--size", "2", "--trials", "6", "--seed", "11"]
    assert main(args + ["--report", str(r1)]) == 0
    assert main(args + ["--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    out = capsys.readouterr().out
    assert "no disagreements" in out


def test_cli_composite_flag_overrides(tmp_path, capsys):
    scn = tmp_path / "scn.json"
    scn.write_text(
        json.dumps(scenario_doc("clone", ["vertex:0", "vertex:3"], composite="max"))
    )
    assert main(["run", str(scn), "--composite", "min"]) == 0
    out = capsys.readouterr().out
    assert "composite min" in out
    assert "verdict: yes" in out
