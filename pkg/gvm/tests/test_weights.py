import pytest

from gvm.exceptions import HypothesisError, PreconditionError
from gvm.services.branching import (
    check_parabolic_hypothesis, eigenvalue_set_dual, klimyk_eigenvalues, klimyk_tensor,
    levi_lowest_weights,
)
from gvm.services.rootsys import root_system_registry, theta_subset, trace_form, vscale
from gvm.services.weights import (
    dominant_minuscule_weight, is_minuscule, is_minuscule_by_marks, levi_decompose_adjoint,
    weight_system,
)


@pytest.mark.parametrize("label, index, dimension", [
    ("E6", 1, 27),
    ("E7", 7, 56),
    ("F4", 4, 26),
    ("G2", 1, 7),
    ("G2", 2, 14),
    ("B3", 1, 7),
    ("C3", 1, 6),
    ("D4", 1, 8),
])
def test_dimensions(label, index, dimension):
    rs = root_system_registry.get(label)
    assert weight_system(rs, rs.fundamental_weights[index - 1]).dimension == dimension


@pytest.mark.slow
def test_e8_adjoint_dimension():
    rs = root_system_registry.get("E8")
    ws = weight_system(rs, rs.fundamental_weights[7])
    assert ws.dimension == 248
    assert ws.is_adjoint()
    assert ws.multiplicity(tuple(0 for _ in rs.rho)) == 8


def test_f4_zero_weight_multiplicity():
    rs = root_system_registry.get("F4")
    ws = weight_system(rs, rs.fundamental_weights[3])
    assert ws.multiplicity((0, 0, 0, 0)) == 2
    assert not ws.is_multiplicity_free()


def test_non_dominant_highest_weight(g2):
    with pytest.raises(PreconditionError):
        weight_system(g2, vscale(-1, g2.fundamental_weights[0]))


def test_lowest_weight_is_w0_of_highest(g2_natural):
    assert g2_natural.lowest == vscale(-1, g2_natural.highest)
    assert g2_natural.weights[0] == g2_natural.lowest
    assert g2_natural.weights[-1] == g2_natural.highest


def test_poset_orders_lowest_below_everything(g2_natural):
    poset = g2_natural.poset()
    assert all(poset.leq(g2_natural.lowest, w) for w in g2_natural.weights)
    assert len(poset.below(g2_natural.highest)) == g2_natural.distinct_count() - 1


def test_minuscule_detection():
    e6 = root_system_registry.get("E6")
    natural = weight_system(e6, e6.fundamental_weights[0])
    assert is_minuscule(natural)
    assert is_minuscule_by_marks(e6, natural.highest)
    b3 = root_system_registry.get("B3")
    vector = weight_system(b3, b3.fundamental_weights[0])
    assert not is_minuscule(vector)
    assert dominant_minuscule_weight(vector) == (0, 0, 0)


def test_adjoint_decomposition_accounts_for_every_dimension(g2):
    ts = theta_subset(g2, [1])
    components = levi_decompose_adjoint(g2, ts)
    assert sum(component.dimension for component in components) == 14


# ============================================================================
# BRANCHING
# ============================================================================

def test_levi_branching_of_g2_natural(g2, g2_natural):
    result = levi_lowest_weights(g2_natural, theta_subset(g2, [1]))
    assert len(result.lowest) == 3
    assert result.total_dimension() == 7


def test_empty_theta_lists_every_weight(g2, g2_natural):
    result = levi_lowest_weights(g2_natural, theta_subset(g2, []))
    assert result.lowest_weights() == g2_natural.weights


def test_klimyk_tensor_dimension(g2_natural):
    decomposition = klimyk_tensor(g2_natural, g2_natural.highest)
    assert decomposition.dimension(g2_natural.rs) == 49


def test_parabolic_hypothesis_rejects_weight_not_orthogonal_to_theta(g2, g2_natural):
    with pytest.raises(HypothesisError):
        check_parabolic_hypothesis(g2_natural, theta_subset(g2, [1]), g2.fundamental_weights[0])


def test_eigenvalues_from_branching_match_brauer_klimyk(g2, g2_natural):
    big = vscale(2, g2.fundamental_weights[1])
    form = trace_form(g2, g2_natural.highest)
    ts = theta_subset(g2, [1])
    assert eigenvalue_set_dual(g2_natural, ts, form, big) == klimyk_eigenvalues(g2_natural, form, big)
