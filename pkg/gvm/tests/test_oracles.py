"""Randomized cross-checks between independent computations of the same quantities."""

import pytest
from hypothesis import given, reject, settings, strategies as st

from gvm.exceptions import HypothesisError
from gvm.services.branching import eigenvalue_set, eigenvalue_set_dual, klimyk_eigenvalues
from gvm.services.conditions import gapexist_check
from gvm.services.conventions import FundamentalParam
from gvm.services.minpoly import (
    ADJOINT, MINUSCULE, MULTIPLICITY_FREE, global_min_poly, specialized_min_poly,
)
from gvm.services.rootsys import root_system_registry, theta_subset, trace_form
from gvm.services.weights import is_minuscule_by_marks, is_minuscule_weight, weight_system


@st.composite
def parabolic_data(draw, labels, nonempty=False):
    rs = root_system_registry.get(draw(st.sampled_from(labels)))
    theta = draw(st.sets(st.sampled_from(rs.indices), min_size=int(nonempty), max_size=rs.rank - 1))
    return rs, theta_subset(rs, sorted(theta))


# ============================================================================
# EIGENVALUE ORACLES
# ============================================================================

ORACLE_TYPES = ("A2", "A3", "A5", "B2", "B3", "C3", "D4", "D5", "G2", "E6")


@settings(max_examples=100, deadline=None)
@given(data=parabolic_data(ORACLE_TYPES), scale=st.lists(st.integers(2, 4), min_size=6, max_size=6))
def test_minimal_polynomial_roots_are_casimir_eigenvalues(data, scale):
    rs, ts = data
    ws = weight_system(rs, rs.fundamental_weights[0])
    form = trace_form(rs, ws.highest)
    values = {j: scale[j - 1] for j in ts.complement}
    big = rs.from_fundamental([values.get(i, 0) for i in rs.indices])
    try:
        direct = eigenvalue_set(ws, ts, form, big)
    except HypothesisError:
        reject()
    roots = global_min_poly(ws, ts, form).poly.eval_at(values)
    assert {value for value, _ in roots} == {value for value, _ in direct}
    assert eigenvalue_set_dual(ws, ts, form, big) == direct
    assert klimyk_eigenvalues(ws, form, big) == direct


# ============================================================================
# CLOSED FORMS AGAINST THE GENERIC ALGORITHM
# ============================================================================

CLOSED_FORM_CASES = [
    ("A3", 1, MULTIPLICITY_FREE),
    ("A4", 2, MINUSCULE),
    ("A5", 3, MINUSCULE),
    ("B3", 1, MULTIPLICITY_FREE),
    ("B4", 4, MINUSCULE),
    ("C3", 1, MINUSCULE),
    ("C4", 1, MULTIPLICITY_FREE),
    ("D4", 1, MINUSCULE),
    ("D5", 5, MINUSCULE),
    ("E6", 1, MINUSCULE),
    ("E6", 6, MULTIPLICITY_FREE),
    ("E7", 7, MINUSCULE),
    ("G2", 1, MULTIPLICITY_FREE),
    ("A3", None, ADJOINT),
    ("B3", None, ADJOINT),
    ("C3", None, ADJOINT),
    ("D4", None, ADJOINT),
    ("F4", None, ADJOINT),
    ("G2", None, ADJOINT),
]


@settings(max_examples=60, deadline=None)
@given(case=st.sampled_from(CLOSED_FORM_CASES), data=st.data())
def test_closed_forms_match_the_generic_algorithm(case, data):
    label, index, kind = case
    rs = root_system_registry.get(label)
    highest = rs.highest_root if index is None else rs.fundamental_weights[index - 1]
    ws = weight_system(rs, highest)
    _, ts = data.draw(parabolic_data((label,), nonempty=kind == ADJOINT))
    assert specialized_min_poly(ws, ts, None, kind) == global_min_poly(ws, ts).poly


# ============================================================================
# EXISTENCE CONDITIONS
# ============================================================================

@settings(max_examples=200, deadline=None)
@given(data=parabolic_data(("A2", "A3", "B2", "B3", "C3", "G2")),
       shifts=st.lists(st.integers(-1, 3), min_size=3, max_size=3))
def test_existence_conditions_agree_on_the_dominant_chamber(data, shifts):
    rs, ts = data
    param = FundamentalParam(ts)
    existence = gapexist_check(param, {j: shifts[j - 1] for j in param.variables})
    assert existence.dominant
    assert existence.consistent


# ============================================================================
# MINUSCULE CLASSIFICATION
# ============================================================================

def _expected_minuscule(family, rank):
    if family == 'A':
        return set(range(1, rank + 1))
    return {
        'B': {rank},
        'C': {1},
        'D': {1, rank - 1, rank},
        'E': {6: {1, 6}, 7: {7}, 8: set()}.get(rank),
        'F': set(),
        'G': set(),
    }[family]


MINUSCULE_LABELS = (
    [f"A{n}" for n in range(1, 9)] + [f"B{n}" for n in range(2, 9)] + [f"C{n}" for n in range(3, 9)]
    + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8", "F4", "G2"]
)


@pytest.mark.parametrize("label", MINUSCULE_LABELS)
def test_minuscule_fundamental_weights(label):
    rs = root_system_registry.get(label)
    by_pairing = {i for i in rs.indices if is_minuscule_weight(rs, rs.fundamental_weights[i - 1])}
    by_marks = {i for i in rs.indices if is_minuscule_by_marks(rs, rs.fundamental_weights[i - 1])}
    assert by_pairing == by_marks == _expected_minuscule(rs.family, rs.rank)
    for i in by_pairing:
        highest = rs.fundamental_weights[i - 1]
        assert weight_system(rs, highest).dimension == len(rs.orbit(highest))
