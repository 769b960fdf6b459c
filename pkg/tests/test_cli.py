from __future__ import annotations

import json
from pathlib import Path

import pytest

from torext.cli import (
    EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_RESOURCE, bundled_scenarios, main, merge_limits, read_scenario_text, run,
)
from torext.scenario import parse_scenario

GOLDEN = Path(__file__).parent / "golden"

EXPECTED_EXIT = {
    "c345_degree_cap": EXIT_RESOURCE,
    "c345_semigroup": EXIT_PASS,
    "gorenstein_collapse": EXIT_PASS,
    "h2_example": EXIT_PASS,
    "h2_power_fail": EXIT_FAIL,
    "h3_codim": EXIT_PASS,
    "q2_artinian": EXIT_PASS,
    "question11": EXIT_PASS,
}


def test_every_bundled_scenario_has_an_expectation():
    assert sorted(EXPECTED_EXIT) == bundled_scenarios()


@pytest.mark.parametrize("name", sorted(EXPECTED_EXIT))
def test_bundled_reports_match_golden(name, tmp_path):
    out = tmp_path / "r.json"
    assert main([name, "--report", str(out)]) == EXPECTED_EXIT[name]
    assert out.read_bytes() == (GOLDEN / f"{name}.json").read_bytes()


def test_power_fail_witness():
    rep = json.loads((GOLDEN / "h2_power_fail.json").read_text())
    (chk,) = rep["checks"]
    assert rep["verdict"] == "fail" and chk["status"] == "fail"
    assert chk["witness"]["index"] == 5 and chk["witness"]["kind"] == "tor"


def test_h2_example_ideals():
    rep = json.loads((GOLDEN / "h2_example.json").read_text())
    fam = rep["checks"][0]["ideals"]
    assert fam["family_tor"] == ["y^6", "x"]
    assert rep["checks"][2]["ideals"]["certified"] == ["x"]


def test_jobs_do_not_change_the_report(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gorenstein_collapse", "--report", str(a)]) == 0
    assert main(["gorenstein_collapse", "--jobs", "2", "--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_same_seed_same_report():
    text, name = read_scenario_text("h2_example")
    sc = parse_scenario(text, name)
    lim = merge_limits(sc, seed=5)
    assert lim.seed == 5 and lim.max_degree == 40
    assert run(sc, lim).to_dict() == run(parse_scenario(text, name), lim).to_dict()


def test_timings_flag(tmp_path):
    out = tmp_path / "t.json"
    main(["h2_power_fail", "--timings", "--report", str(out)])
    rep = json.loads(out.read_text())
    assert all(isinstance(c["ms"], int) for c in rep["checks"])


def test_text_format(capsys):
    assert main(["h2_power_fail", "--format", "text"]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert "power_annihilation" in out and "witness" in out
    assert out.rstrip().endswith("verdict: fail")


def test_list_and_print(capsys):
    assert main(["--list"]) == 0
    assert capsys.readouterr().out.split() == bundled_scenarios()
    assert main(["h3_codim", "--print"]) == 0
    printed = capsys.readouterr().out
    assert parse_scenario(printed, "h3_codim") == parse_scenario(read_scenario_text("h3_codim")[0], "h3_codim")


def test_degree_cap_from_command_line(tmp_path):
    out = tmp_path / "r.json"
    assert main(["h2_example", "--max-degree", "1", "--report", str(out)]) == EXIT_RESOURCE


@pytest.mark.parametrize("text, fragment", [
    ("ring R { char 100; vars x; }\n", "not prime"),
    ("ring R { char 101; vars x, y; relations x^2; }\ncheck collapse { x Z; y Z; n 0; }\n", "2:18"),
    ("ring R { char 101; vars x; \n", "unterminated"),
])
def test_input_errors_exit_2(tmp_path, capsys, text, fragment):
    p = tmp_path / "bad.scn"
    p.write_text(text)
    assert main([str(p)]) == EXIT_INPUT
    assert fragment in capsys.readouterr().err


def test_missing_file_and_bad_flags(capsys):
    assert main(["no_such_scenario"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT
    assert main(["h2_example", "--jobs", "0"]) == EXIT_INPUT
    capsys.readouterr()


def test_hypothesis_violation_exits_1(tmp_path):
    p = tmp_path / "hv.scn"
    p.write_text(
        "ring H2 { char 101; vars x, y; relations x^2; }\n"
        "module K over H2 { quotient x, y; }\n"
        "family F { seeds K; close none; depth 0; }\n"
        "check tor_ext_probe { family F; }\n")
    out = tmp_path / "r.json"
    assert main([str(p), "--report", str(out)]) == EXIT_FAIL
    assert json.loads(out.read_text())["verdict"] == "hypothesis-violation"
