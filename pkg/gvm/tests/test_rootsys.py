from fractions import Fraction

import pytest

from gvm.exceptions import InputError, PreconditionError
from gvm.services.rootsys import (
    build_root_system, root_system_registry, theta_subset, trace_form, vadd,
)


@pytest.mark.parametrize("label, positive, order", [
    ("A3", 6, 24),
    ("B3", 9, 48),
    ("C3", 9, 48),
    ("D4", 12, 192),
    ("G2", 6, 12),
    ("F4", 24, 1152),
    ("E6", 36, 51840),
])
def test_root_counts_and_weyl_orders(label, positive, order):
    rs = root_system_registry.get(label)
    assert len(rs.positive_roots) == positive
    assert rs.weyl_order == order


def test_registry_caches_instances():
    assert root_system_registry.get("E6") is root_system_registry.get("E6")


def test_registry_rejects_unknown_label():
    with pytest.raises(InputError):
        root_system_registry.get("H3")


def test_fundamental_weights_are_dual_to_coroots(g2):
    for i in g2.indices:
        assert g2.labels(g2.fundamental_weights[i - 1]) == tuple(
            Fraction(int(i == j)) for j in g2.indices
        )


def test_rho_pairs_to_one_with_every_simple_coroot():
    rs = root_system_registry.get("F4")
    assert all(rs.pairing(rs.rho, i) == 1 for i in rs.indices)


def test_longest_element_sends_rho_to_minus_rho(g2):
    assert g2.longest_element_action(g2.rho) == tuple(-c for c in g2.rho)


def test_opposition_on_e6():
    rs = root_system_registry.get("E6")
    assert [rs.opposition(i) for i in rs.indices] == [6, 2, 5, 4, 3, 1]


def test_dot_action_fixes_minus_rho(g2):
    minus_rho = tuple(-c for c in g2.rho)
    assert g2.dot((1, 2, 1), minus_rho) == minus_rho


def test_gl_weights_carry_a_trace(gl4):
    weight = gl4.from_fundamental([0, 0, 0, 4])
    assert gl4.trace(weight) == 4
    assert gl4.labels(weight) == (0, 0, 0)
    natural = gl4.from_fundamental([1, 0, 0])
    assert gl4.trace(natural) == 0
    assert gl4.labels(natural) == (1, 0, 0)


def test_wrong_coordinate_count(g2):
    with pytest.raises(InputError):
        g2.from_fundamental([1, 0, 0])


# ============================================================================
# Θ SUBSETS
# ============================================================================

def test_theta_must_be_proper(g2):
    with pytest.raises(PreconditionError):
        theta_subset(g2, [1, 2])


def test_theta_index_out_of_range(g2):
    with pytest.raises(InputError):
        theta_subset(g2, [3])


def test_min_coset_representatives(g2):
    ts = theta_subset(g2, [1])
    reps = ts.min_coset_reps()
    assert len(reps) == ts.coset_count == 6
    assert reps[0] == ()


def test_levi_elements_count():
    rs = build_root_system('A', 3)
    ts = theta_subset(rs, [1, 3])
    assert ts.levi_weyl_order == 4
    assert len(ts.levi_elements()) == 4


def test_rho_theta_is_orthogonal_to_theta():
    rs = root_system_registry.get("B4")
    ts = theta_subset(rs, [2, 3])
    assert all(rs.pairing(ts.rho_theta, i) == 0 for i in ts.theta)
    assert vadd(ts.rho_theta, ts.rho_levi) == rs.rho


# ============================================================================
# TRACE FORM
# ============================================================================

@pytest.mark.parametrize("label, index, constant", [
    ("E6", 1, 6),
    ("F4", 4, 6),
    ("G2", 1, 6),
])
def test_trace_form_constants(label, index, constant):
    rs = root_system_registry.get(label)
    assert trace_form(rs, rs.fundamental_weights[index - 1]).constant == constant


def test_trace_form_rejects_trivial_representation(g2):
    with pytest.raises(PreconditionError):
        trace_form(g2, tuple(0 for _ in g2.rho))
