from fractions import Fraction

import pytest

from gvm.exceptions import InputError, PreconditionError
from gvm.services.conditions import (
    _shuffles, coset_dot_orbit, gapexist_check, gl_lambda_bar, gln_linkage_check, iota,
    prop_every_certify, recursion_closed_forms, recursion_f, recursion_sweep,
)
from gvm.services.conventions import FundamentalParam, make_parametrization
from gvm.services.exactalg import MultiPoly
from gvm.services.gap import CERTIFIED
from gvm.services.rootsys import root_system_registry, theta_subset, unit
from gvm.services.weights import weight_system


# ============================================================================
# EXISTENCE CONDITIONS
# ============================================================================

def test_existence_conditions_at_a_regular_dominant_point(gl4):
    param = make_parametrization(gl4, blocks=(2, 4))
    existence = gapexist_check(param, {1: 0, 2: 0})
    assert existence.regular and existence.dominant
    assert existence.condition_i is True
    assert existence.consistent


def test_enumeration_limit_is_enforced(gl4):
    param = make_parametrization(gl4, blocks=(2, 4))
    with pytest.raises(PreconditionError):
        gapexist_check(param, {1: 0, 2: 0}, limit=2)


def test_coset_dot_orbit_symbolic(g2):
    orbit = coset_dot_orbit(FundamentalParam(theta_subset(g2, [1])))
    assert len(orbit.points) == 6
    assert orbit.distinct == 6
    assert orbit.assignment is None


def test_coset_dot_orbit_numeric_starts_at_lambda(g2):
    param = FundamentalParam(theta_subset(g2, [1]))
    orbit = coset_dot_orbit(param, {2: 3})
    assert orbit.points[0] == param.at({2: 3})


# ============================================================================
# TYPE-SPECIFIC RULES
# ============================================================================

def test_gl_rule_is_regularity(gl4):
    param = make_parametrization(gl4, blocks=(2, 4))
    verdict = prop_every_certify(weight_system(gl4, unit(4, 1)), param, {1: 0, 2: 0})
    assert verdict.clause == 'i'
    assert verdict.verdict == CERTIFIED
    assert verdict.conditions == {'regular': True}


def test_rule_rejects_other_representations(g2):
    adjoint = weight_system(g2, g2.fundamental_weights[1])
    param = FundamentalParam(theta_subset(g2, [1]))
    with pytest.raises(InputError):
        prop_every_certify(adjoint, param, {2: 0})


def test_iota_on_exceptional_types():
    f4 = root_system_registry.get("F4")
    assert [iota(f4, i) for i in f4.indices] == [1, 1, 4, 4]


# ============================================================================
# gl_n LINKAGE
# ============================================================================

def test_lambda_bar_is_centred():
    assert gl_lambda_bar((2, 4), (0, 0)) == tuple(Fraction(v, 2) for v in (-3, -1, 1, 3))


def test_distinct_blocks_are_not_linked():
    linkage = gln_linkage_check((2, 4), (0, 0))
    assert not linkage.holds
    assert linkage.set_witnesses == []


def test_overlapping_blocks_are_linked():
    # λ̄ = (0, 0, 1): the first block sits inside the second
    linkage = gln_linkage_check((1, 3), (1, 0))
    assert linkage.lambda_bar == (0, 0, 1)
    assert linkage.witnesses == [(2, 2)]
    assert linkage.set_witnesses == [(1, 2)]


def test_shuffles_keep_order_inside_each_part():
    placed = _shuffles([(1, 2), (3,)], 3)
    assert placed == {(1, 2, 3), (1, 3, 2), (3, 1, 2)}
    assert _shuffles([], 0) == {()}


def test_linkage_input_checks():
    with pytest.raises(InputError):
        gln_linkage_check((2, 2), (0, 0))
    with pytest.raises(InputError):
        gln_linkage_check((2, 4), (0,))


# ============================================================================
# RECURSIONS
# ============================================================================

def test_first_recursion_values():
    mu1, mu2, s1 = (MultiPoly.variable(name) for name in ("mu1", "mu2", "s1"))
    assert recursion_f(0, 3) == 1
    assert recursion_f(1, 2) == mu2 - mu1 + s1


def test_closed_forms_hold_up_to_five():
    assert recursion_sweep(5) == []


def test_closed_forms_report_residuals():
    forms = recursion_closed_forms(3, 2)
    assert forms.f_residual.is_zero()
    assert forms.g_residual.is_zero()
    assert forms.exact


def test_recursion_input_checks():
    with pytest.raises(InputError):
        recursion_closed_forms(-1, 2)
