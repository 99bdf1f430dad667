"""
Branching Service - restriction to Levi subalgebras and tensor products.

Features:
    - Levi branching: highest weights W_Θ(π) and lowest weights W̄_Θ(π)
      with component counts and Levi dimensions
    - Brauer-Klimyk tensor product decomposition
    - The parabolic tensor formula {(Λ+ϖ, m_{π*,Θ}(ϖ))} and its hypothesis check
    - Eigenvalue sets of the Casimir-type operator on V_Λ ⊗ π*
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from gvm.exceptions import GvmError, HypothesisError, PreconditionError
from gvm.services.rootsys import RootSystem, ThetaSubset, Vector, vadd, vdot, vscale, vsub
from gvm.services.weights import WeightSystem, levi_character, weight_system

logger = logging.getLogger(__name__)


# ============================================================================
# LEVI BRANCHING
# ============================================================================

@dataclass
class BranchingResult:
    ts: ThetaSubset
    highest: List[Tuple[Vector, int]]
    lowest: List[Tuple[Vector, int]]
    levi_dimensions: Dict[Vector, int] = field(default_factory=dict)
    lowest_dimensions: Dict[Vector, int] = field(default_factory=dict)

    def lowest_weights(self) -> List[Vector]:
        return [w for w, _ in self.lowest]

    def highest_weights(self) -> List[Vector]:
        return [w for w, _ in self.highest]

    def total_dimension(self) -> int:
        return sum(count * self.levi_dimensions[w] for w, count in self.highest)

    def count_of_lowest(self, weight: Sequence) -> int:
        return dict(self.lowest).get(tuple(weight), 0)


def levi_lowest_weights(ws: WeightSystem, ts: ThetaSubset) -> BranchingResult:
    """
    Decompose π|_{g_Θ} by peeling Levi characters from the top.

    Weights are visited by decreasing height; each Θ-dominant weight with
    remaining multiplicity k contributes k components, whose character is
    then subtracted.

    Returns:
        BranchingResult with W_Θ(π) (highest) and W̄_Θ(π) (lowest, = w_{0,Θ} of highest)
    """
    rs = ws.rs
    if not ts.theta:
        pairs = [(w, ws.multiplicity(w)) for w in ws.weights]
        ones = {w: 1 for w in ws.weights}
        return BranchingResult(ts, list(reversed(pairs)), pairs, ones, dict(ones))

    remaining = dict(ws.multiplicities)
    highest: List[Tuple[Vector, int]] = []
    dimensions: Dict[Vector, int] = {}
    for weight in sorted(ws.multiplicities, key=lambda w: (-rs.height(w), w)):
        count = remaining.get(weight, 0)
        if count == 0:
            continue
        if count < 0 or not ts.is_dominant(weight):
            raise GvmError(f"Levi peeling left an invalid remainder at {weight}")
        highest.append((weight, count))
        character = levi_character(ts, weight)
        dimensions[weight] = sum(character.values())
        for mu, m in character.items():
            remaining[mu] = remaining.get(mu, 0) - count * m
    if any(remaining.values()):
        raise GvmError("Levi peeling did not exhaust the character")

    w0 = ts.longest_word()
    lowest = [(rs.act(w0, w), count) for w, count in highest]
    lowest_dimensions = {bottom: dimensions[top] for (top, _), (bottom, _) in zip(highest, lowest)}
    lowest.sort(key=lambda item: (rs.height(item[0]), item[0]))
    logger.debug("branching %s to %s: %d components", ws, ts, len(highest))
    return BranchingResult(ts, highest, lowest, dimensions, lowest_dimensions)


# ============================================================================
# TENSOR PRODUCTS
# ============================================================================

@dataclass
class TensorDecomposition:
    left: Vector
    right: Vector
    components: List[Tuple[Vector, int]]

    def dimension(self, rs: RootSystem) -> int:
        return sum(m * rs.weyl_dimension(h) for h, m in self.components)

    def as_dict(self) -> Dict[Vector, int]:
        return dict(self.components)


def klimyk_tensor(ws_a: WeightSystem, b: Sequence) -> TensorDecomposition:
    """
    V(a) ⊗ V(b) by the Brauer-Klimyk rule. Only the weights of V(a) are enumerated.

    For each weight μ of V(a), μ + b + ρ is moved to the dominant chamber;
    points on a wall are dropped and the others contribute with the sign of
    the reflecting word.
    """
    rs = ws_a.rs
    b = tuple(b)
    if not rs.is_dominant_integral(b):
        raise PreconditionError(f"highest weight {tuple(map(str, b))} is not dominant integral for {rs.label}")
    totals: Dict[Vector, int] = {}
    for mu, m in ws_a.multiplicities.items():
        shifted = vadd(vadd(mu, b), rs.rho)
        if any(vdot(shifted, beta) == 0 for beta in rs.positive_roots):
            continue
        dominant, word = rs.dominant_conjugate(shifted)
        sign = -1 if len(word) % 2 else 1
        key = vsub(dominant, rs.rho)
        totals[key] = totals.get(key, 0) + sign * m
    if any(v < 0 for v in totals.values()):
        raise GvmError("negative multiplicity in Klimyk cancellation")
    components = sorted(((h, m) for h, m in totals.items() if m), key=lambda item: (-rs.height(item[0]), item[0]))
    return TensorDecomposition(ws_a.highest, b, components)


def check_parabolic_hypothesis(ws_dual: WeightSystem, ts: ThetaSubset, big: Sequence) -> BranchingResult:
    """
    Λ dominant integral, ⟨Λ,α⟩ = 0 on Θ, and Λ+ϖ dominant for ϖ ∈ W_Θ(π*).

    Raises:
        HypothesisError: naming the first failing condition
    """
    rs = ws_dual.rs
    big = tuple(big)
    if not rs.is_dominant_integral(big):
        raise HypothesisError("Λ is not dominant integral")
    for i in ts.theta:
        if rs.pairing(big, i) != 0:
            raise HypothesisError(f"⟨Λ, α_{i}⟩ ≠ 0 for α_{i} ∈ Θ")
    branching = levi_lowest_weights(ws_dual, ts)
    for weight, _ in branching.highest:
        shifted = vadd(big, weight)
        for j in ts.complement:
            if rs.pairing(shifted, j) < 0:
                raise HypothesisError(f"Λ+ϖ is not dominant at α_{j} for ϖ = {tuple(map(str, weight))}")
    return branching


def tensor_with_parabolic_character(ws_dual: WeightSystem, big: Sequence, ts: ThetaSubset) -> TensorDecomposition:
    """V_Λ ⊗ π* = Σ m_{π*,Θ}(ϖ) V_{Λ+ϖ} under the dominance hypothesis."""
    branching = check_parabolic_hypothesis(ws_dual, ts, big)
    rs = ws_dual.rs
    totals: Dict[Vector, int] = {}
    for weight, count in branching.highest:
        key = vadd(tuple(big), weight)
        totals[key] = totals.get(key, 0) + count
    components = sorted(totals.items(), key=lambda item: (-rs.height(item[0]), item[0]))
    return TensorDecomposition(ws_dual.highest, tuple(big), components)


# ============================================================================
# EIGENVALUES
# ============================================================================

def _merge(values: List[Tuple[Fraction, int]]) -> List[Tuple[Fraction, int]]:
    merged: Dict[Fraction, int] = {}
    for value, count in values:
        merged[value] = merged.get(value, 0) + count
    return sorted(merged.items())


def eigenvalue_set(ws: WeightSystem, ts: ThetaSubset, form, big: Sequence) -> List[Tuple[Fraction, int]]:
    """
    {⟨Λ,ϖ⟩ + D_π(ϖ) : ϖ ∈ W̄_Θ(π)} with component counts.

    Raises:
        HypothesisError: Λ violates the dominance hypothesis
    """
    from gvm.services.minpoly import d_shift

    ws_dual = weight_system(ws.rs, ws.dual_highest())
    check_parabolic_hypothesis(ws_dual, ts, big)
    branching = levi_lowest_weights(ws, ts)
    return _merge([
        (form.pair(tuple(big), w) + d_shift(ws, form, w), count)
        for w, count in branching.lowest
    ])


def eigenvalue_set_dual(ws: WeightSystem, ts: ThetaSubset, form, big: Sequence) -> List[Tuple[Fraction, int]]:
    """{-⟨Λ,ϖ⟩ + ½⟨π*-ϖ, π*+ϖ+2ρ⟩ : ϖ ∈ W_Θ(π*)}"""
    rs = ws.rs
    ws_dual = weight_system(rs, ws.dual_highest())
    branching = check_parabolic_hypothesis(ws_dual, ts, big)
    top = ws_dual.highest
    values = []
    for w, count in branching.highest:
        shift = form.pair(vsub(top, w), vadd(vadd(top, w), vscale(2, rs.rho))) / 2
        values.append((-form.pair(tuple(big), w) + shift, count))
    return _merge(values)


def klimyk_eigenvalues(ws: WeightSystem, form, big: Sequence) -> List[Tuple[Fraction, int]]:
    """
    ½(c(Λ) + c(π*) - c(ν)) over V(ν) ⊂ V_Λ ⊗ π*, c(μ) = ⟨μ, μ+2ρ⟩.

    This is the action of the split Casimir on each component and does not
    depend on any parabolic data.
    """
    rs = ws.rs
    ws_dual = weight_system(rs, ws.dual_highest())
    big = tuple(big)
    decomposition = klimyk_tensor(ws_dual, big)

    def casimir(mu):
        return form.pair(mu, vadd(mu, vscale(2, rs.rho)))

    base = casimir(big) + casimir(ws_dual.highest)
    return _merge([((base - casimir(h)) / 2, m) for h, m in decomposition.components])
