from fractions import Fraction

import pytest

from gvm.exceptions import PreconditionError
from gvm.services.conventions import make_parametrization
from gvm.services.exactalg import LinearForm
from gvm.services.gap import (
    CERTIFIED, NOT_CERTIFIED, extremal_low_weights, gap_certify, gap_function,
)
from gvm.services.rootsys import build_root_system, root_system_registry, theta_subset, unit
from gvm.services.weights import weight_system


@pytest.fixture
def gl4_natural(gl4):
    return weight_system(gl4, unit(4, 1))


@pytest.fixture
def gl4_blocks(gl4):
    return make_parametrization(gl4, blocks=(2, 4))


# ============================================================================
# EXTREMAL LOW WEIGHTS
# ============================================================================

def test_g2_chain_lengths(g2_natural):
    assert [chain.length for chain in extremal_low_weights(g2_natural, 2)] == [2]


def test_chains_start_at_the_lowest_weight(g2_natural):
    for alpha in (1, 2):
        for chain in extremal_low_weights(g2_natural, alpha):
            assert chain.weights[0] == g2_natural.lowest
            assert chain.weights[-1] == chain.weight
            assert chain.gammas[-1] == alpha
            assert g2_natural.rs.pairing(chain.weight, alpha) != 0


def test_every_adjoint_chain_is_short():
    rs = root_system_registry.get("F4")
    ws = weight_system(rs, rs.fundamental_weights[0])
    for alpha in rs.indices:
        chains = extremal_low_weights(ws, alpha)
        assert 1 <= len(chains) <= 3


# ============================================================================
# GAP FUNCTIONS
# ============================================================================

def test_g2_gap_scalar(g2, g2_natural):
    chain = extremal_low_weights(g2_natural, 1)[0]
    function = gap_function(g2_natural, theta_subset(g2, [1]), None, chain)
    assert function.r.scalar == Fraction(1, 6)
    assert not function.identically_zero


def test_gap_function_needs_alpha_in_theta(g2, g2_natural):
    chain = extremal_low_weights(g2_natural, 2)[0]
    with pytest.raises(PreconditionError):
        gap_function(g2_natural, theta_subset(g2, [1]), None, chain)


def test_gl_gap_function_is_a_block_difference(gl4_natural, gl4_blocks):
    expected = LinearForm(-1, {1: 1, 2: -1})
    for alpha in gl4_blocks.ts.theta:
        for chain in extremal_low_weights(gl4_natural, alpha):
            r = gap_function(gl4_natural, None, None, chain, gl4_blocks).r
            assert [form for form, _ in r.factors] == [expected]


# ============================================================================
# CERTIFICATES
# ============================================================================

def test_gl_certificate_at_zero(gl4_natural, gl4_blocks):
    certificate = gap_certify(gl4_natural, gl4_blocks, None, {1: 0, 2: 0})
    assert certificate.verdict == CERTIFIED
    assert certificate.stated_theta == (1, 3)
    assert all(c.value != 0 for result in certificate.alpha_results for c in result.candidates)


def test_gl_certificate_fails_on_the_linkage_wall(gl4_natural, gl4_blocks):
    certificate = gap_certify(gl4_natural, gl4_blocks, None, {1: 1, 2: 0})
    assert certificate.verdict == NOT_CERTIFIED
    assert not certificate.annihilator
    assert certificate.notes == []


# ============================================================================
# DEGENERATE FIRST FACTOR
# ============================================================================

@pytest.mark.parametrize("m1", [1, 2])
@pytest.mark.parametrize("m2", [1, 2])
def test_first_factor_vanishes_when_n_is_m1_plus_4(m1, m2):
    # sl_n with lowest weight -m1 Λ1 - m2 Λ2, Θ = Ψ minus α2, α = α_{n-1}
    n = m1 + 4
    rs = build_root_system('A', n - 1)
    coords = [0] * (n - 1)
    coords[n - 3], coords[n - 2] = m2, m1
    ws = weight_system(rs, rs.from_fundamental(coords))
    assert ws.lowest == rs.from_fundamental([-m1, -m2] + [0] * (n - 3))
    ts = theta_subset(rs, [i for i in rs.indices if i != 2])
    chains = extremal_low_weights(ws, n - 1)
    assert len(chains) == 1
    assert gap_function(ws, ts, None, chains[0]).identically_zero
