"""
Gap Service - extremal low weights, gap functions and their certification.

For α ∈ Θ and an extremal low weight ϖ_α the gap function r_{α,ϖ_α}(λ) is a
product of affine-linear forms; a nonzero value for every α ∈ Θ certifies
J_Θ(λ) = I_{π,Θ}(λ) + J(λ_Θ).

Features:
    - ExtremalChain: ϖ₁ = π̄ < ... < ϖ_K = ϖ_α with its simple roots γ₁..γ_K
    - gap_function: first factor over Ω∖Ω^{ϖ_α}, second factor over the n_i
    - gap_certify: per-α candidates, verdict and the annihilator upgrade
    - nonvanishing_criteria: sufficient conditions for r ≢ 0
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from gvm.exceptions import ChainStructureError, GvmError, PreconditionError
from gvm.services.branching import levi_lowest_weights
from gvm.services.conventions import Parametrization
from gvm.services.exactalg import LinearForm, LinearProduct, Scalar
from gvm.services.minpoly import d_shift, global_min_poly
from gvm.services.rootsys import (
    NormalizedForm, RootSystem, ThetaSubset, Vector, trace_form, vadd, vdot, vsub, vsum,
)
from gvm.services.weights import WeightPoset, WeightSystem, is_minuscule

logger = logging.getLogger(__name__)

CERTIFIED = 'certified'
NOT_CERTIFIED = 'not_certified'
UNCERTIFIABLE = 'uncertifiable'

CHAIN_TYPES = ('A', 'B', 'C', 'F', 'G')


# ============================================================================
# EXTREMAL CHAINS
# ============================================================================

@dataclass(frozen=True)
class ExtremalChain:
    """
    An extremal low weight ϖ_α with the weights below it.

    `weights` lists ϖ₁ = π̄ < ϖ₂ < ... < ϖ_K = ϖ_α and `gammas` the simple
    indices γ_i = ϖ_{i+1} - ϖ_i, closed by γ_K = α.
    """

    alpha: int
    weight: Vector
    weights: Tuple[Vector, ...]
    gammas: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.weights)

    def prime(self, rs: RootSystem) -> Vector:
        """ϖ′_α = ϖ_α + α"""
        return vadd(self.weight, rs.simple_roots[self.alpha - 1])

    def validate(self, ws: WeightSystem, poset: Optional[WeightPoset] = None) -> None:
        """
        Raises:
            ChainStructureError: naming the first structural property that fails
        """
        rs = ws.rs
        poset = poset or ws.poset()
        k = self.length

        def fail(message):
            raise ChainStructureError(f"chain for α_{self.alpha} at {tuple(map(str, self.weight))}: {message}")

        if self.weights[0] != ws.lowest:
            fail("the chain does not start at the lowest weight")
        if rs.height(vsub(self.weight, ws.lowest)) + 1 != k:
            fail("its length is not |ϖ_α - π̄| + 1")
        for i in range(k):
            if rs.pairing(self.weights[i], self.gammas[i]) >= 0:
                fail(f"⟨ϖ_{i + 1}, γ_{i + 1}⟩ is not negative")
            for j in range(i + 1, k):
                if rs.pairing(self.weights[i], self.gammas[j]) != 0:
                    fail(f"⟨ϖ_{i + 1}, γ_{j + 1}⟩ ≠ 0")
        for i in range(k):
            for j in range(k):
                linked = i == j or rs.cartan[self.gammas[i] - 1][self.gammas[j] - 1] != 0
                if linked != (abs(i - j) <= 1):
                    fail(f"γ_{i + 1} and γ_{j + 1} break the path shape")
        if set(self.weights[:-1]) != set(poset.below(self.weight)):
            fail("the weights below ϖ_α are not the chain")
        for i, weight in enumerate(self.weights):
            if ws.multiplicity(weight) != 1:
                fail(f"ϖ_{i + 1} has multiplicity {ws.multiplicity(weight)}")
            if any(rs.pairing(lower, self.gammas[i]) != 0 for lower in self.weights[:i]):
                fail(f"ϖ_{i + 1} is not extremal for γ_{i + 1}")
        family, _ = rs.component_type(self.gammas)
        if family not in CHAIN_TYPES:
            fail(f"the γ-diagram has type {family}")


def _simple_index(rs: RootSystem, vector: Vector) -> int:
    try:
        return rs.simple_roots.index(tuple(vector)) + 1
    except ValueError:
        raise ChainStructureError(f"{tuple(map(str, vector))} is not a simple root")


def extremal_low_weights(ws: WeightSystem, alpha: int) -> List[ExtremalChain]:
    """
    The ≤-minimal weights ϖ with ⟨ϖ, α⟩ ≠ 0, each with its validated chain.

    Example:
        >>> G2 = build_root_system('G', 2)
        >>> ws = weight_system(G2, G2.fundamental_weights[0])
        >>> [c.length for c in extremal_low_weights(ws, 2)]
        [2]
    """
    rs = ws.rs
    poset = ws.poset()
    candidates = {w for w in ws.weights if rs.pairing(w, alpha) != 0}
    chains = []
    for weight in ws.weights:
        if weight not in candidates:
            continue
        below = poset.below(weight)
        if any(lower in candidates for lower in below):
            continue
        weights = tuple(below) + (weight,)
        gammas = tuple(_simple_index(rs, vsub(b, a)) for a, b in zip(weights, weights[1:])) + (alpha,)
        chain = ExtremalChain(alpha, weight, weights, gammas)
        chain.validate(ws, poset)
        chains.append(chain)
    logger.debug("α_%d of %s: %d extremal low weight(s)", alpha, ws, len(chains))
    return chains


# ============================================================================
# GAP FUNCTIONS
# ============================================================================

@dataclass
class GapFunction:
    chain: ExtremalChain
    first: List[LinearForm]
    second: List[LinearForm]
    n_indices: Tuple[int, ...]

    @property
    def r(self) -> LinearProduct:
        return LinearProduct.from_forms(self.first + self.second)

    @property
    def identically_zero(self) -> bool:
        return any(form.is_zero() for form in self.first)

    def evaluate(self, assignment: Mapping[int, Scalar]) -> Fraction:
        return self.r.evaluate(assignment)


def gap_function(ws: WeightSystem, ts: Optional[ThetaSubset], form: Optional[NormalizedForm],
                 chain: ExtremalChain, param: Optional[Parametrization] = None) -> GapFunction:
    """
    r_{α,ϖ_α}(λ) as lists of first- and second-factor forms.

    Raises:
        PreconditionError: α ∉ Θ
        GvmError: a second-factor entry vanishes identically

    Example:
        >>> G2 = build_root_system('G', 2)
        >>> ws = weight_system(G2, G2.fundamental_weights[0])
        >>> chain = extremal_low_weights(ws, 1)[0]
        >>> gap_function(ws, theta_subset(G2, [1]), None, chain).r.scalar
        Fraction(1, 6)
    """
    rs = ws.rs
    result = global_min_poly(ws, ts, form, param)
    param, form = result.param, result.form
    if chain.alpha not in param.ts.theta:
        raise PreconditionError(f"α_{chain.alpha} is not in Θ = {list(param.ts.theta)}")
    lam = param.lambda_theta

    def pairing(weight) -> LinearForm:
        return form.linear(lam, weight)

    prime = chain.prime(rs)
    prime_shift = pairing(prime) + d_shift(ws, form, prime)
    first = [
        prime_shift - pair.linear - pair.constant
        for pair in result.omega
        if not any(ws.leq(w, chain.weight) for w in pair.weights)
    ]

    lowest = {w for w, _ in result.lowest}
    n_indices = tuple(j - 1 for j in range(2, chain.length + 1) if chain.weights[j - 1] in lowest)
    alpha_vector = rs.simple_roots[chain.alpha - 1]
    top = pairing(chain.weight) - form.pair(alpha_vector, chain.weight) + d_shift(ws, form, chain.weight)
    second = []
    for n in n_indices:
        entry = top - pairing(chain.weights[n - 1]) - d_shift(ws, form, chain.weights[n])
        if entry.is_zero():
            raise GvmError(f"second factor of r for α_{chain.alpha} vanishes identically at n = {n}")
        second.append(entry)
    return GapFunction(chain, first, second, n_indices)


def rho_shifted_second_factor(ws: WeightSystem, form: NormalizedForm, param: Parametrization,
                              function: GapFunction) -> Optional[List[LinearForm]]:
    """
    Second-factor entries as ⟨λ_Θ+ρ, γ_{n_i} + ... + γ_{K-1}⟩.

    Valid when 2⟨π̄,γ₁⟩/⟨γ₁,γ₁⟩ = -1 and the γ-diagram is A_K, B_K with γ_K
    short, or G₂ with γ₂ short; returns None otherwise.
    """
    rs = ws.rs
    chain = function.chain
    if rs.pairing(ws.lowest, chain.gammas[0]) != -1:
        return None
    family, _ = rs.component_type(chain.gammas)
    norms = [vdot(rs.simple_roots[g - 1], rs.simple_roots[g - 1]) for g in chain.gammas]
    short_end = norms[-1] == min(norms) and norms.count(norms[-1]) == 1
    if not (family == 'A' or (family == 'B' and short_end) or (family == 'G' and chain.length == 2 and short_end)):
        return None
    shifted = vadd(param.lambda_theta, rs.rho)
    entries = []
    for n in function.n_indices:
        span = vsum((rs.simple_roots[g - 1] for g in chain.gammas[n - 1:chain.length - 1]), rs.dim)
        entries.append(form.linear(shifted, span))
    return entries


# ============================================================================
# NONVANISHING CRITERIA
# ============================================================================

LEVI_IRREDUCIBLE = 'levi_irreducible'
CHAIN_IN_THETA = 'chain_in_theta'
A_TYPE_TAIL = 'a_type_tail'
MULTIPLICITY_FREE = 'multiplicity_free'
MINUSCULE = 'minuscule'


@dataclass
class Criterion:
    """
    Sufficient conditions for r_{α,ϖ_α} ≢ 0 that hold for one chain.

    `alternative` is set for the adjoint representation when this chain has
    no criterion but another candidate for the same α does.
    """

    names: Tuple[str, ...]
    reason: str
    alternative: Optional[ExtremalChain] = None

    @property
    def applies(self) -> bool:
        return bool(self.names)


def _levi_irreducible(ws: WeightSystem, ts: ThetaSubset, chain: ExtremalChain) -> bool:
    key = ts.restriction_key(chain.weight)
    branching = levi_lowest_weights(ws, ts)
    return sum(count for w, count in branching.lowest if ts.restriction_key(w) == key) == 1


def _a_type_tail(ws: WeightSystem, ts: ThetaSubset, chain: ExtremalChain) -> bool:
    rs = ws.rs
    component = next(c for c in ts.components if chain.alpha in c)
    if any(vdot(ws.lowest, rs.simple_roots[i - 1]) != 0 for i in component):
        return False
    head = chain.gammas[:-1]
    rest = [i for i in ts.theta if i not in chain.gammas]
    if any(rs.cartan[i - 1][g - 1] != 0 for i in rest for g in head):
        return False
    return not head or rs.component_type(head)[0] == 'A'


def _chain_criteria(ws: WeightSystem, ts: ThetaSubset, chain: ExtremalChain) -> List[str]:
    names = []
    if _levi_irreducible(ws, ts, chain):
        names.append(LEVI_IRREDUCIBLE)
    if set(chain.gammas) <= set(ts.theta):
        names.append(CHAIN_IN_THETA)
    if _a_type_tail(ws, ts, chain):
        names.append(A_TYPE_TAIL)
    if ws.is_multiplicity_free():
        names.append(MULTIPLICITY_FREE)
    if is_minuscule(ws):
        names.append(MINUSCULE)
    return names


def nonvanishing_criteria(ws: WeightSystem, ts: ThetaSubset, chain: ExtremalChain) -> Criterion:
    """
    Which sufficient criterion guarantees r_{α,ϖ_α} ≢ 0 for this chain.

    Example:
        >>> G2 = build_root_system('G', 2)
        >>> ws = weight_system(G2, G2.fundamental_weights[0])
        >>> nonvanishing_criteria(ws, theta_subset(G2, [1]), extremal_low_weights(ws, 1)[0]).applies
        True
    """
    names = _chain_criteria(ws, ts, chain)
    if names:
        return Criterion(tuple(names), f"satisfies {', '.join(names)}")
    if ws.is_adjoint():
        for other in extremal_low_weights(ws, chain.alpha):
            if other != chain and _chain_criteria(ws, ts, other):
                return Criterion((), "adjoint: another extremal low weight for this α has a criterion", other)
    return Criterion((), "no criterion")


# ============================================================================
# CERTIFICATES
# ============================================================================

@dataclass
class GapCandidate:
    function: GapFunction
    value: Fraction
    criterion: Criterion

    @property
    def chain(self) -> ExtremalChain:
        return self.function.chain

    @property
    def identically_zero(self) -> bool:
        return self.function.identically_zero


@dataclass
class AlphaResult:
    alpha: int
    stated_alpha: int
    candidates: List[GapCandidate]

    @property
    def certified(self) -> bool:
        return any(c.value != 0 for c in self.candidates)

    @property
    def uncertifiable(self) -> bool:
        return all(c.identically_zero for c in self.candidates)


@dataclass
class GapCertificate:
    param: Parametrization
    assignment: Dict[int, Fraction]
    alpha_results: List[AlphaResult]
    verdict: str
    dominant: bool
    annihilator: bool
    notes: List[str] = field(default_factory=list)

    @property
    def stated_theta(self) -> Tuple[int, ...]:
        return self.param.stated_theta


def is_dominant_shift(rs: RootSystem, shifted: Sequence) -> bool:
    """2⟨μ,β⟩/⟨β,β⟩ ∉ {-1, -2, ...} for every positive root β."""
    for beta in rs.positive_roots:
        value = rs.coroot_pairing(shifted, beta)
        if value.denominator == 1 and value < 0:
            return False
    return True


def gap_certify(ws: WeightSystem, param: Parametrization, form: Optional[NormalizedForm],
                assignment: Mapping[int, Scalar]) -> GapCertificate:
    """
    Certify J_Θ(λ) = I_{π,Θ}(λ) + J(λ_Θ) at a rational λ.

    Returns:
        GapCertificate with verdict certified, not_certified or uncertifiable.
        Outside gl_n a failed certificate does not mean the gap fails.
    """
    rs = ws.rs
    form = form or trace_form(rs, ws.highest)
    ts = param.ts
    values = param.check_assignment(assignment)
    lam = param.at(values)

    results = []
    for alpha in ts.theta:
        candidates = []
        for chain in extremal_low_weights(ws, alpha):
            function = gap_function(ws, None, form, chain, param)
            candidates.append(GapCandidate(function, function.evaluate(values),
                                           nonvanishing_criteria(ws, ts, chain)))
        results.append(AlphaResult(alpha, param.stated_index(alpha), candidates))

    if any(result.uncertifiable for result in results):
        verdict = UNCERTIFIABLE
    elif all(result.certified for result in results):
        verdict = CERTIFIED
    else:
        verdict = NOT_CERTIFIED
    dominant = is_dominant_shift(rs, vadd(lam, rs.rho))
    notes = []
    if verdict != CERTIFIED and rs.family != 'gl':
        notes.append("a missing certificate does not show that the gap fails")
    logger.info("gap certificate for %s at %s: %s", param, dict(values), verdict)
    return GapCertificate(param, values, results, verdict, dominant,
                          verdict == CERTIFIED and dominant, notes)
