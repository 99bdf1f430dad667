from fractions import Fraction

import pytest

from gvm.exceptions import InputError
from gvm.services.exactalg import FactoredPoly, LinearForm, LinearProduct
from gvm.services.parsing import (
    parse_assignment, parse_blocks, parse_golden_text, parse_indices, parse_latex_poly,
    parse_latex_product, parse_tau, parse_type_label, parse_weight,
)


@pytest.mark.parametrize("label, expected", [
    ("E6", ('E', 6)),
    ("gl4", ('gl', 4)),
    ("B12", ('B', 12)),
])
def test_type_labels(label, expected):
    assert parse_type_label(label) == expected


@pytest.mark.parametrize("label", ["X3", "E", "gl", "e6", "A-1"])
def test_bad_type_labels(label):
    with pytest.raises(InputError):
        parse_type_label(label)


def test_weights():
    assert parse_weight("fund:1,0,2") == ("fund", [1, 0, 2])
    kind, coords = parse_weight("eps:1/2,-1/2")
    assert kind == "eps"
    assert coords == [Fraction(1, 2), Fraction(-1, 2)]


def test_weight_with_zero_denominator():
    with pytest.raises(InputError):
        parse_weight("eps:1/0,0")


def test_indices_and_empty_set():
    assert parse_indices("2, 3,4") == (2, 3, 4)
    assert parse_indices("none") == ()
    assert parse_indices("") == ()


def test_blocks_must_increase():
    assert parse_blocks("2,4") == (2, 4)
    with pytest.raises(InputError):
        parse_blocks("3,3")


def test_assignments():
    assert parse_assignment("1,-1/2") == [1, Fraction(-1, 2)]
    assert parse_assignment("2=1, 5=-1/2") == {2: 1, 5: Fraction(-1, 2)}
    assert parse_assignment("") == []


def test_tau():
    assert parse_tau("id") == {}
    assert parse_tau("1:6,6:1") == {1: 6, 6: 1}


# ============================================================================
# LaTeX
# ============================================================================

def test_latex_poly_single_variable():
    poly = parse_latex_poly(r"(x - \lambda)(x + \frac{1}{2}\lambda - 1)^2", default_index=2)
    lam = LinearForm.variable(2)
    assert poly == FactoredPoly([(lam, 1), (lam * Fraction(-1, 2) + 1, 2)])


def test_latex_poly_several_variables():
    poly = parse_latex_poly(r"\Bigl(x - \lambda_{1} - 2\lambda_3 + \frac{5}{18}\Bigr)(x - 4)")
    root = LinearForm(Fraction(-5, 18), {1: 1, 3: 2})
    assert poly == FactoredPoly.from_roots([root, LinearForm(4)])


def test_latex_poly_rejects_scalar():
    with pytest.raises(InputError):
        parse_latex_poly(r"2(x - 1)")


def test_latex_poly_rejects_non_monic_factor():
    with pytest.raises(InputError):
        parse_latex_poly(r"(2x - 1)")


def test_latex_product():
    product = parse_latex_product(r"-\frac{1}{6}(\lambda_2 + 1)(3\lambda_2 + 4)")
    lam = LinearForm.variable(2)
    assert product == LinearProduct.from_forms([lam + 1, lam * 3 + 4], Fraction(-1, 6))


def test_bare_lambda_needs_context():
    with pytest.raises(InputError):
        parse_latex_product(r"(\lambda + 1)")


GOLDEN_TEXT = r"""
% name: first
% type: G2
% kind: minpoly
% a free comment line
(x - \lambda)(x + 1)

% name: second
% type: G2
% alpha: 1
% kind: gap
\frac{1}{6}(\lambda + 1)
"""


def test_golden_entries():
    entries = parse_golden_text(GOLDEN_TEXT, source="test.tex")
    assert [e.name for e in entries] == ["first", "second"]
    assert entries[0].kind == "minpoly"
    assert entries[0].comments == ["a free comment line"]
    assert entries[1].get("alpha") == "1"
    assert entries[1].body == r"\frac{1}{6}(\lambda + 1)"


def test_golden_entry_without_body():
    with pytest.raises(InputError):
        parse_golden_text("% name: lonely\n% type: G2\n")
