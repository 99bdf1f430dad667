from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gvm.exceptions import InputError, MissingVariableError
from gvm.services.exactalg import (
    FactoredPoly, LinearForm, LinearProduct, MultiPoly, format_rational, parse_rational,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


# ============================================================================
# RATIONALS
# ============================================================================

def test_parse_rational_reduces():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 4 ") == 4


@pytest.mark.parametrize("text", ["1/0", "abc", "1//2", ""])
def test_parse_rational_rejects_garbage(text):
    with pytest.raises(InputError):
        parse_rational(text)


def test_format_rational_drops_unit_denominator():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-5, 18)) == "-5/18"


# ============================================================================
# LINEAR FORMS
# ============================================================================

def test_linear_form_arithmetic():
    form = LinearForm.variable(1, 2) + LinearForm.variable(3) - Fraction(1, 2)
    assert form.coeffs == {1: 2, 3: 1}
    assert form.constant == Fraction(-1, 2)
    assert (form - form).is_zero()
    assert form * 0 == LinearForm()


def test_linear_form_evaluate_names_missing_variable():
    form = LinearForm.variable(2) + 1
    assert form.evaluate({2: Fraction(1, 3)}) == Fraction(4, 3)
    with pytest.raises(MissingVariableError):
        form.evaluate({1: 0})


def test_substitute_keeps_unmapped_variables():
    form = LinearForm.variable(1) + LinearForm.variable(2, 3)
    result = form.substitute({2: LinearForm(1)})
    assert result == LinearForm.variable(1) + 3


def test_primitive_has_integer_coefficients_and_positive_lead():
    form = LinearForm(Fraction(-1, 3), {1: Fraction(-2, 3)})
    scale, primitive = form.primitive()
    assert scale == Fraction(-1, 3)
    assert primitive == LinearForm(1, {1: 2})


@given(a=rationals, b=rationals, c=rationals)
def test_primitive_recombines(a, b, c):
    form = LinearForm(c, {1: a, 2: b})
    scale, primitive = form.primitive()
    assert primitive * scale == form


# ============================================================================
# FACTORED POLYNOMIALS
# ============================================================================

def test_factored_poly_merges_equal_roots():
    lam = LinearForm.variable(1)
    poly = FactoredPoly.from_roots([lam, lam + 1, lam])
    assert poly.degree == 3
    assert not poly.is_squarefree()
    assert dict(poly.factors)[lam] == 2


def test_factored_poly_equality_ignores_input_order():
    lam = LinearForm.variable(1)
    roots = [lam, lam - Fraction(1, 2), LinearForm(3)]
    assert FactoredPoly.from_roots(roots) == FactoredPoly.from_roots(reversed(roots))


def test_eval_at_merges_coincident_values():
    poly = FactoredPoly.from_roots([LinearForm.variable(1), LinearForm(1)])
    assert poly.eval_at({1: 1}) == [(Fraction(1), 2)]
    assert poly.evaluate(1, {1: 1}) == 0


@given(x=rationals, lam=rationals)
def test_expand_agrees_with_factored_evaluation(x, lam):
    poly = FactoredPoly.from_roots([LinearForm.variable(1) + 2, LinearForm(Fraction(-1, 3))])
    expanded = poly.expand()
    assert expanded.evaluate({'x': x, 'lambda1': lam}) == poly.evaluate(x, {1: lam})


# ============================================================================
# LINEAR PRODUCTS
# ============================================================================

def test_linear_product_absorbs_scalars():
    lam = LinearForm.variable(1)
    product = LinearProduct.from_forms([lam * 2 + 2, LinearForm(Fraction(1, 3))])
    assert product.scalar == Fraction(2, 3)
    assert product.factors == ((lam + 1, 1),)


def test_linear_product_zero_factor_collapses():
    product = LinearProduct.from_forms([LinearForm.variable(1), LinearForm()])
    assert product.is_identically_zero()
    assert product.factors == ()


def test_linear_product_sign_normalization():
    lam = LinearForm.variable(1)
    assert LinearProduct.from_forms([-lam + 1]) == LinearProduct.from_forms([lam - 1], -1)


# ============================================================================
# MULTIVARIATE POLYNOMIALS
# ============================================================================

def test_multipoly_power_and_coefficients():
    s = MultiPoly.variable('s')
    t = MultiPoly.variable('t')
    square = (s + t) ** 2
    assert square.coefficient({'s': 1, 't': 1}) == 2
    assert square.degree() == 2
    assert square - s * s - t * t - 2 * s * t == 0


def test_multipoly_evaluate_requires_all_variables():
    with pytest.raises(InputError):
        MultiPoly.variable('mu1').evaluate({})


def test_multipoly_mixes_variable_sets():
    s = MultiPoly.variable('s')
    t = MultiPoly.variable('t')
    difference = (s * t + Fraction(1, 2)) - t * s
    assert difference == Fraction(1, 2)
    assert difference.variables() == ()
    assert difference.evaluate({}) == Fraction(1, 2)
    assert (s + 1).evaluate({'s': Fraction(1, 3), 't': 7}) == Fraction(4, 3)
    assert (t - s).terms == {(('s', 1),): Fraction(-1), (('t', 1),): Fraction(1)}


def test_multipoly_negative_power_rejected():
    with pytest.raises(ValueError):
        MultiPoly.variable('s') ** -1


@given(rationals, rationals)
def test_multipoly_evaluation_matches_rational_arithmetic(a, b):
    s = MultiPoly.variable('s')
    t = MultiPoly.variable('t')
    assert ((s - t) * (s + t) + 3).evaluate({'s': a, 't': b}) == a * a - b * b + 3
