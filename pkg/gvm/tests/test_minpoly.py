from fractions import Fraction

import pytest

from gvm.exceptions import HypothesisError, InputError, PreconditionError
from gvm.services.minpoly import (
    ADJOINT, MINUSCULE, MULTIPLICITY_FREE, char_poly, classical_limit, global_min_poly,
    min_poly_at, order_shift_violations, power_sum_generation, rho_shift_identity,
    specialized_min_poly, tau_min_poly,
)
from gvm.services.rootsys import build_root_system, root_system_registry, theta_subset
from gvm.services.weights import weight_system


def _natural(label, index=1):
    rs = root_system_registry.get(label)
    return weight_system(rs, rs.fundamental_weights[index - 1])


# ============================================================================
# GLOBAL MINIMAL POLYNOMIAL
# ============================================================================

def test_g2_degree_three_for_short_levi(g2, g2_natural):
    result = global_min_poly(g2_natural, theta_subset(g2, [1]))
    assert result.degree == 3
    assert result.squarefree
    assert result.poly.variables() == (2,)


def test_borel_case_has_one_root_per_weight(g2, g2_natural):
    result = global_min_poly(g2_natural, theta_subset(g2, []))
    assert result.degree == g2_natural.distinct_count()


def test_needs_theta_or_parametrization(g2_natural):
    with pytest.raises(InputError):
        global_min_poly(g2_natural)


def test_specialization_roots_match_annihilator(g2, g2_natural):
    result = global_min_poly(g2_natural, theta_subset(g2, [1]))
    evaluation = min_poly_at(result, {2: Fraction(7, 3)})
    assert {v for v, _ in evaluation.annihilator} == {v for v, _ in evaluation.roots}
    assert all(linkage.kappa >= 1 for linkage in evaluation.classes)


def test_specialization_rejects_unknown_variable(g2, g2_natural):
    result = global_min_poly(g2_natural, theta_subset(g2, [1]))
    with pytest.raises(InputError):
        min_poly_at(result, {1: 0})


def test_shift_respects_levi_order(g2, g2_natural):
    assert order_shift_violations(g2_natural, theta_subset(g2, [1])) == []


# ============================================================================
# CLOSED FORMS
# ============================================================================

def test_multiplicity_free_closed_form(g2, g2_natural):
    ts = theta_subset(g2, [1])
    assert specialized_min_poly(g2_natural, ts, None, MULTIPLICITY_FREE) == global_min_poly(g2_natural, ts).poly


def test_minuscule_closed_form():
    ws = _natural("A3")
    ts = theta_subset(ws.rs, [2])
    assert specialized_min_poly(ws, ts, None, MINUSCULE) == global_min_poly(ws, ts).poly


def test_adjoint_closed_form(g2):
    ws = weight_system(g2, g2.fundamental_weights[1])
    ts = theta_subset(g2, [1])
    assert specialized_min_poly(ws, ts, None, ADJOINT) == global_min_poly(ws, ts).poly


def test_closed_form_checks_its_hypothesis(g2_natural, g2):
    with pytest.raises(HypothesisError):
        specialized_min_poly(g2_natural, theta_subset(g2, [1]), None, MINUSCULE)


def test_adjoint_closed_form_needs_nonempty_theta(g2):
    ws = weight_system(g2, g2.fundamental_weights[1])
    with pytest.raises(HypothesisError):
        specialized_min_poly(ws, theta_subset(g2, []), None, ADJOINT)


# ============================================================================
# DIAGRAM AUTOMORPHISMS
# ============================================================================

def test_tau_flip_on_a3():
    ws = _natural("A3")
    rs = ws.rs
    assert tau_min_poly(ws, theta_subset(rs, []), {1: 3, 2: 2, 3: 1}).degree == 4


def test_tau_must_be_an_automorphism():
    ws = _natural("A3")
    with pytest.raises(InputError):
        tau_min_poly(ws, theta_subset(ws.rs, []), {1: 2, 2: 1, 3: 3})


def test_tau_must_preserve_theta():
    ws = _natural("A3")
    with pytest.raises(PreconditionError):
        tau_min_poly(ws, theta_subset(ws.rs, [1]), {1: 3, 2: 2, 3: 1})


# ============================================================================
# CHARACTERISTIC POLYNOMIAL
# ============================================================================

@pytest.mark.parametrize("label, index, constants", [
    ("E6", 1, {Fraction(4, 3)}),
    ("E7", 7, {Fraction(9, 8)}),
    ("C3", 1, {Fraction(3, 2)}),
    ("D4", 1, {Fraction(3, 2)}),
])
def test_single_orbit_constants(label, index, constants):
    assert {factor.constant for factor in char_poly(_natural(label, index))} == constants


def test_b_series_zero_weight_factor():
    ws = _natural("B3")
    constants = {factor.weight: factor.constant for factor in char_poly(ws)}
    assert constants[(0, 0, 0)] == Fraction(3, 2)
    assert {c for w, c in constants.items() if any(w)} == {Fraction(5, 4)}


def test_g2_char_poly(g2_natural):
    constants = {factor.weight: factor.constant for factor in char_poly(g2_natural)}
    assert constants[(0, 0, 0)] == 1
    assert {c for w, c in constants.items() if any(w)} == {Fraction(5, 6)}


@pytest.mark.parametrize("label", ["G2", "B3", "C3", "D4", "F4"])
def test_rho_shift_identity(label):
    index = 4 if label == "F4" else 1
    assert rho_shift_identity(_natural(label, index))


# ============================================================================
# CLASSICAL LIMIT
# ============================================================================

def test_classical_limit_covers_every_root(g2, g2_natural):
    ts = theta_subset(g2, [1])
    limit = classical_limit(g2_natural, ts)
    result = global_min_poly(g2_natural, ts)
    linears = set(limit.qbar.roots())
    assert all(pair.linear in linears for pair in result.omega)
    assert limit.qbar.degree <= result.degree
    for linear, fiber in limit.ramified:
        assert len(fiber) > 1


# ============================================================================
# POWER SUMS
# ============================================================================

def test_power_sums_of_g2_are_independent(g2_natural):
    assert power_sum_generation(g2_natural).independent


def test_power_sums_of_gl():
    rs = build_root_system('gl', 3)
    ws = weight_system(rs, rs.from_fundamental([1, 0, 1]))
    assert power_sum_generation(ws).independent
