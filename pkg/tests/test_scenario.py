from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from torext.cli import bundled_scenarios, read_scenario_text
from torext.scenario import (
    DanglingReference, NonPrimeCharacteristic, ScenarioError, format_scenario, parse_scenario,
)

RING = "ring H2 { char 101; vars x, y; relations x^2; }\n"


@pytest.mark.parametrize("name", bundled_scenarios())
def test_bundled_scenarios_roundtrip(name):
    text, nm = read_scenario_text(name)
    sc = parse_scenario(text, nm)
    again = parse_scenario(format_scenario(sc), nm)
    assert again == sc
    assert format_scenario(again) == format_scenario(sc)


def test_parse_structure():
    sc = parse_scenario(read_scenario_text("h2_example")[0], "h2_example")
    assert list(sc.rings) == ["H2"]
    assert sc.rings["H2"].relations == ["x^2"]
    assert list(sc.modules) == ["I1", "I2", "I3", "I4", "I5", "I6", "Q1"]
    assert sc.modules["I2"].degrees == [0, 1]
    assert sc.modules["Q1"].kind == "quotient"
    assert sc.families["F"].close == [] and sc.families["F"].assert_cm == 0
    assert [c.kind for c in sc.checks] == ["family_ideal", "family_ideal", "sing_equality", "power_annihilation"]
    assert sc.checks[0].params["expect"] == "x, y^6"


def test_polynomials_are_canonicalized():
    sc = parse_scenario(RING + "module Q over H2 { quotient  y*x+ x ; }\n", "t")
    assert sc.modules["Q"].gens == ["x*y + x"]


def test_limits_block():
    sc = parse_scenario("limits { max-degree 12; window 2; }\n" + RING, "t")
    assert sc.limits.max_degree == 12 and sc.limits.window == 2


def test_non_prime_characteristic():
    with pytest.raises(NonPrimeCharacteristic) as e:
        parse_scenario("ring R { char 100; vars x; }\n", "t")
    assert e.value.line == 1


def test_dangling_family_reference_has_position():
    text = RING + "module K over H2 { quotient x, y; }\n" + "check collapse { x Z; y Z; n 0; }\n"
    with pytest.raises(DanglingReference) as e:
        parse_scenario(text, "t")
    assert e.value.name == "Z"
    assert (e.value.line, e.value.col) == (3, 18)


def test_dangling_ring():
    with pytest.raises(DanglingReference):
        parse_scenario("module K over R { quotient x; }\n", "t")


@pytest.mark.parametrize("text, fragment", [
    (RING + "module K over H2 { quotient x; }\nfamily F { seeds K; }\ncheck collapse { x F; n 0; }\n",
     "missing key 'y'"),
    (RING + "check nonsense { }\n", "nonsense"),
    (RING + "module K over H2 { quotient x; \n", "unterminated"),
    (RING + "module K over H2 { apply frob K; }\n", "frob"),
    (RING + "module K over H2 { quotient x +; }\n", "bad polynomial"),
    ("ring H2 { char 101; vars x, y; relations x + y^2; }\n", "homogeneous"),
])
def test_input_errors(text, fragment):
    with pytest.raises(ScenarioError) as e:
        parse_scenario(text, "t")
    assert fragment in str(e.value)
    assert e.value.line >= 1


def test_duplicate_names_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario(RING + RING, "t")


names = st.sampled_from(["A", "B", "M1", "Q"])
polys = st.lists(st.sampled_from(["x", "y", "x*y", "y^2", "x + y", "y^3"]), min_size=1, max_size=3, unique=True)


@st.composite
def scenarios(draw):
    mods = {}
    lines = [RING]
    for nm in draw(st.lists(names, min_size=1, max_size=4, unique=True)):
        form = draw(st.sampled_from(["ideal", "quotient", "matrix"]))
        if form == "matrix":
            d = draw(st.integers(0, 2))
            body = f"degrees 0, {d}; relations [x, 0] [y^{d + 1}, -x];"
        else:
            body = f"{form} {', '.join(draw(polys))};"
        mods[nm] = form
        lines.append(f"module {nm} over H2 {{ {body} }}\n")
    seeds = draw(st.lists(st.sampled_from(sorted(mods)), min_size=1, unique=True))
    ops = draw(st.lists(st.sampled_from(["syz", "tr", "dual"]), unique=True))
    close = ", ".join(ops) if ops else "none"
    lines.append(f"family F {{ seeds {', '.join(seeds)}; close {close}; depth {draw(st.integers(0, 3))}; }}\n")
    lines.append(f"check collapse {{ x F; y F; n {draw(st.integers(0, 2))}; }}\n")
    a, b = draw(st.sampled_from(sorted(mods))), draw(st.sampled_from(sorted(mods)))
    lines.append(f"check transpose_swap {{ left {a}; right {b}; }}\n")
    return "".join(lines)


@given(scenarios())
@settings(max_examples=40, deadline=None)
def test_generated_scenarios_roundtrip(text):
    sc = parse_scenario(text, "gen")
    out = format_scenario(sc)
    assert parse_scenario(out, "gen") == sc
    assert format_scenario(parse_scenario(out, "gen")) == out
