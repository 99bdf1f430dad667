import pytest

from gvm.exceptions import InputError
from gvm.services.exactalg import FactoredPoly, LinearForm
from gvm.services.goldens import (
    FAMILIES, GoldenCheck, GoldenReport, check_entry, load_goldens, render_report,
    restricted_poly, run_family,
)
from gvm.services.parsing import parse_golden_text


@pytest.mark.parametrize("family", ["G2", "gl", "B", "C", "D", "F4", "E6"])
def test_family_matches_goldens(family):
    report = run_family(family, workers=1)
    assert report.checks
    assert report.passed, render_report([report])[0]


@pytest.mark.slow
@pytest.mark.parametrize("family", ["E7", "E8"])
def test_large_family_matches_goldens(family):
    report = run_family(family, workers=1)
    assert report.passed, render_report([report])[0]


def test_every_family_has_a_golden_file():
    for family in FAMILIES:
        assert load_goldens(family)


def test_unknown_family():
    with pytest.raises(InputError):
        load_goldens("H3")


def test_tampered_golden_is_reported():
    text = (
        "% name: G2 tampered\n"
        "% type: G2\n"
        "% pi: fund:1,0\n"
        "% theta: 1\n"
        "% kind: minpoly\n"
        "(x - \\lambda)\n"
    )
    check = check_entry(parse_golden_text(text)[0])
    assert not check.passed
    assert check.computed


G2_HEADERS = (
    "% name: G2 theta1\n"
    "% type: G2\n"
    "% pi: fund:1,0\n"
    "% theta: 1\n"
    "% kind: minpoly\n"
)
G2_THETA1 = r"(x - \frac{2}{3})(x - \frac{1}{2}\lambda - \frac{3}{2})(x + \frac{1}{2}\lambda)"


def test_golden_text_is_compared_exactly():
    check = check_entry(parse_golden_text(G2_HEADERS + G2_THETA1 + "  \n")[0])
    assert check.passed
    assert check.computed == G2_THETA1


def test_reordered_factors_are_a_mismatch():
    reordered = r"(x + \frac{1}{2}\lambda)(x - \frac{2}{3})(x - \frac{1}{2}\lambda - \frac{3}{2})"
    check = check_entry(parse_golden_text(G2_HEADERS + reordered + "\n")[0])
    assert not check.passed
    assert check.computed == G2_THETA1
    assert check.message == "same factors, different layout"


def test_respaced_gap_function_is_a_mismatch():
    text = (
        "% name: G2 r alpha1\n"
        "% type: G2\n"
        "% pi: fund:1,0\n"
        "% theta: 1\n"
        "% kind: gap\n"
        "% alpha: 1\n"
        "\\frac{1}{6}(\\lambda+1)(3\\lambda+4)\n"
    )
    check = check_entry(parse_golden_text(text)[0])
    assert not check.passed
    assert check.computed == r"\frac{1}{6}(\lambda + 1)(3\lambda + 4)"
    assert check.message == "same factors, different layout"


def test_every_entry_cites_its_source():
    for family in FAMILIES:
        for entry in load_goldens(family):
            assert entry.get('source'), entry.name


def test_restricted_poly_merges_roots():
    lam1, lam2 = LinearForm.variable(1), LinearForm.variable(2)
    poly = FactoredPoly.from_roots([lam1 + lam2, lam1])
    restricted = restricted_poly(poly, {2: LinearForm(0)})
    assert restricted == FactoredPoly.from_roots([lam1])


def test_report_lists_mismatches():
    report = GoldenReport("G2", [
        GoldenCheck("good", True, "a", "a"),
        GoldenCheck("bad", False, "a", "b", "differs"),
    ])
    text, ok = render_report([report])
    assert not ok
    assert "G2: 1/2 tables match" in text
    assert "MISMATCH bad" in text
