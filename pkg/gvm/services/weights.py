"""
Weight System Service - multiplicities, dominance order and minuscule data.

Features:
    - Freudenthal's recursion over dominant weights, spread by Weyl orbits
    - The same recursion for any Levi subsystem (used by branching)
    - Dimension check against the Weyl dimension formula
    - Dominance order ≤ and the weight poset (networkx DiGraph)
    - Minuscule tests and Levi decompositions of minuscule and adjoint modules
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from gvm.exceptions import GvmError, PreconditionError
from gvm.services.rootsys import (
    RootSystem, ThetaSubset, Vector, vadd, vdot, vscale, vsub,
)

logger = logging.getLogger(__name__)


# ============================================================================
# FREUDENTHAL
# ============================================================================

def dominant_weights_below(rs: RootSystem, highest: Vector, indices: Sequence[int],
                           positive_roots: Sequence[Vector]) -> List[Vector]:
    """All weights μ ≤ highest that are dominant for the given simple indices."""
    found = {tuple(highest)}
    frontier = [tuple(highest)]
    while frontier:
        following = []
        for mu in frontier:
            for beta in positive_roots:
                nu = vsub(mu, beta)
                if nu not in found and all(rs.pairing(nu, i) >= 0 for i in indices):
                    found.add(nu)
                    following.append(nu)
        frontier = following
    return sorted(found, key=lambda w: (-rs.height(w), w))


def freudenthal(rs: RootSystem, highest: Vector, indices: Optional[Sequence[int]] = None,
                positive_roots: Optional[Sequence[Vector]] = None,
                rho: Optional[Vector] = None) -> Dict[Vector, int]:
    """
    Dominant multiplicities of the irreducible module with this highest weight.

    With `indices`, `positive_roots` and `rho` the computation runs inside the
    Levi subsystem they describe; "dominant" then means dominant for those
    simple roots only.

    Returns:
        Map from dominant weights to multiplicities
    """
    indices = rs.indices if indices is None else tuple(indices)
    positive_roots = rs.positive_roots if positive_roots is None else positive_roots
    rho = rs.rho if rho is None else rho
    highest = tuple(highest)

    top = vadd(highest, rho)
    top_norm = vdot(top, top)
    multiplicities: Dict[Vector, int] = {}
    for mu in dominant_weights_below(rs, highest, indices, positive_roots):
        if mu == highest:
            multiplicities[mu] = 1
            continue
        total = Fraction(0)
        for beta in positive_roots:
            k = 1
            while True:
                shifted = vadd(mu, vscale(k, beta))
                dominant, _ = rs.dominant_conjugate(shifted, indices)
                m = multiplicities.get(dominant)
                if m is None:
                    break
                total += m * vdot(shifted, beta)
                k += 1
        shifted_mu = vadd(mu, rho)
        denominator = top_norm - vdot(shifted_mu, shifted_mu)
        value = 2 * total / denominator
        if value.denominator != 1:
            raise GvmError(f"non-integral multiplicity {value} at {mu}")
        if value:
            multiplicities[mu] = int(value)
    return multiplicities


def spread_orbits(rs: RootSystem, dominant: Dict[Vector, int],
                  indices: Optional[Sequence[int]] = None) -> Dict[Vector, int]:
    full: Dict[Vector, int] = {}
    for mu, m in dominant.items():
        for nu in rs.orbit(mu, indices):
            full[nu] = m
    return full


# ============================================================================
# WEIGHT SYSTEM
# ============================================================================

class WeightSystem:
    """
    Multiplicity map W(π) → m_π of an irreducible finite-dimensional module.

    Features:
        - highest weight π, lowest weight π̄ = w₀π, dimension
        - weights listed lowest first (by height)
        - dominance order and poset
    """

    def __init__(self, rs: RootSystem, highest: Vector, dominant: Dict[Vector, int]):
        self.rs = rs
        self.highest: Vector = tuple(highest)
        self.dominant_multiplicities = dict(dominant)
        self.multiplicities: Dict[Vector, int] = spread_orbits(rs, dominant)
        self.lowest: Vector = rs.longest_element_action(self.highest)
        self.dimension = sum(self.multiplicities.values())
        self._ordered = sorted(self.multiplicities, key=lambda w: (rs.height(w), w))

    @property
    def weights(self) -> List[Vector]:
        return list(self._ordered)

    def distinct_count(self) -> int:
        return len(self._ordered)

    def multiplicity(self, weight: Sequence) -> int:
        return self.multiplicities.get(tuple(weight), 0)

    def contains(self, weight: Sequence) -> bool:
        return tuple(weight) in self.multiplicities

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.multiplicities.values())

    def dual_highest(self) -> Vector:
        """Highest weight of π*: -π̄."""
        return vscale(-1, self.lowest)

    def leq(self, a: Sequence, b: Sequence) -> bool:
        """a ≤ b iff b - a ∈ R₊"""
        return self.rs.is_positive_combination(vsub(b, a))

    def poset(self) -> 'WeightPoset':
        return WeightPoset(self)

    def is_adjoint(self) -> bool:
        return self.rs.center is None and self.highest == self.rs.highest_root

    def __repr__(self) -> str:
        return f"WeightSystem({self.rs.label}, dim={self.dimension})"


_weight_system_cache = LRUCache(maxsize=256)


@cached(_weight_system_cache, key=lambda rs, highest: hashkey(rs.label, tuple(highest)))
def weight_system(rs: RootSystem, highest: Sequence) -> WeightSystem:
    """
    Weight system of the irreducible module with the given highest weight.

    Raises:
        PreconditionError: highest weight not dominant integral

    Example:
        >>> F4 = build_root_system('F', 4)
        >>> ws = weight_system(F4, F4.fundamental_weights[3])
        >>> ws.dimension, ws.multiplicity((0, 0, 0, 0))
        (26, 2)
    """
    highest = tuple(highest)
    if not rs.is_dominant_integral(highest):
        raise PreconditionError(
            f"highest weight {tuple(map(str, highest))} is not dominant integral for {rs.label}"
        )
    ws = WeightSystem(rs, highest, freudenthal(rs, highest))
    expected = rs.weyl_dimension(highest)
    if ws.dimension != expected:
        raise GvmError(f"Freudenthal dimension {ws.dimension} != Weyl dimension {expected}")
    logger.debug("weight system %s %s: dim %d", rs.label, highest, ws.dimension)
    return ws


def levi_character(ts: ThetaSubset, highest: Sequence) -> Dict[Vector, int]:
    """Full multiplicity map of the irreducible g_Θ-module with this Θ-dominant highest weight."""
    rs = ts.rs
    dominant = freudenthal(rs, highest, ts.theta, ts.positive_roots, ts.rho_levi)
    return spread_orbits(rs, dominant, ts.theta)


# ============================================================================
# WEIGHT POSET
# ============================================================================

class WeightPoset:
    """
    Hasse diagram of the weights: edges ϖ → ϖ+α_i labelled by i.

    ϖ ≤ ϖ' in the dominance order iff a directed path runs from ϖ to ϖ'.
    """

    def __init__(self, ws: WeightSystem):
        self.ws = ws
        self.graph = nx.DiGraph()
        for weight in ws.weights:
            self.graph.add_node(weight, mult=ws.multiplicity(weight))
        for weight in ws.weights:
            for i, alpha in zip(ws.rs.indices, ws.rs.simple_roots):
                upper = vadd(weight, alpha)
                if ws.contains(upper):
                    self.graph.add_edge(weight, upper, label=i)

    def leq(self, a: Sequence, b: Sequence) -> bool:
        a, b = tuple(a), tuple(b)
        return a == b or nx.has_path(self.graph, a, b)

    def below(self, weight: Sequence) -> List[Vector]:
        """Weights strictly below the given one."""
        return sorted(nx.ancestors(self.graph, tuple(weight)), key=lambda w: (self.ws.rs.height(w), w))

    def edges(self) -> List[Tuple[Vector, Vector, int]]:
        return [(a, b, data['label']) for a, b, data in self.graph.edges(data=True)]


# ============================================================================
# MINUSCULE AND ADJOINT DECOMPOSITIONS
# ============================================================================

def is_minuscule_weight(rs: RootSystem, highest: Sequence) -> bool:
    """⟨π, β^∨⟩ ∈ {0, 1} for every positive root β."""
    return all(rs.coroot_pairing(highest, beta) in (0, 1) for beta in rs.positive_roots)


def is_minuscule(ws: WeightSystem) -> bool:
    return is_minuscule_weight(ws.rs, ws.highest)


def coroot_marks(rs: RootSystem) -> Tuple[Fraction, ...]:
    """Marks of the highest short root in the coroot normalization."""
    short = rs.highest_short_root()
    norm = vdot(short, short)
    return tuple(
        c * vdot(alpha, alpha) / norm
        for c, alpha in zip(rs.root_coordinates(short), rs.simple_roots)
    )


def is_minuscule_by_marks(rs: RootSystem, highest: Sequence) -> bool:
    """Highest weight (traceless part) is 0 or a fundamental weight with coroot mark 1."""
    labels = rs.labels(highest)
    nonzero = [(i, label) for i, label in zip(rs.indices, labels) if label]
    if not nonzero:
        return True
    if len(nonzero) > 1 or nonzero[0][1] != 1:
        return False
    return coroot_marks(rs)[nonzero[0][0] - 1] == 1


def dominant_minuscule_weight(ws: WeightSystem) -> Vector:
    """
    The unique dominant weight μ of π with ⟨μ, β^∨⟩ ≤ 1 for every positive root.

    Example:
        >>> B3 = build_root_system('B', 3)
        >>> dominant_minuscule_weight(weight_system(B3, B3.fundamental_weights[0]))
        (Fraction(0, 1), Fraction(0, 1), Fraction(0, 1))
    """
    rs = ws.rs
    candidates = [
        mu for mu in ws.dominant_multiplicities
        if all(rs.coroot_pairing(mu, beta) <= 1 for beta in rs.positive_roots)
    ]
    if len(candidates) != 1:
        raise GvmError(f"expected one dominant minuscule weight, found {len(candidates)}")
    return candidates[0]


def levi_decompose_minuscule(ws: WeightSystem, ts: ThetaSubset) -> List[Vector]:
    """
    Highest weights of the g_Θ-components of a minuscule module.

    Raises:
        PreconditionError: the module is not minuscule
    """
    if not is_minuscule(ws):
        raise PreconditionError("levi_decompose_minuscule needs a minuscule representation")
    highest = [w for w in ws.weights if ts.is_dominant(w)]
    return sorted(highest, key=lambda w: (-ws.rs.height(w), w))


@dataclass(frozen=True)
class AdjointComponent:
    grading: Tuple[int, ...]
    lowest: Vector
    highest: Vector
    dimension: int
    kind: str  # 'graded', 'center' or 'levi'


def theta_grading(ts: ThetaSubset, root: Sequence) -> Tuple[int, ...]:
    """p_Θ(β): root coordinates of β on Ψ∖Θ."""
    coords = ts.rs.root_coordinates(root)
    return tuple(int(coords[j - 1]) for j in ts.complement)


def levi_decompose_adjoint(rs: RootSystem, ts: ThetaSubset) -> List[AdjointComponent]:
    """
    g = ⊕_{m ∈ L_Θ} V(m) as a g_Θ-module.

    V(m) for m ≠ 0 is irreducible with lowest weight the unique smallest root
    of p_Θ⁻¹(m). V(0) splits as a_Θ (trivial, dim |Ψ∖Θ|) plus one adjoint
    module m_{Θ_i} per connected component of Θ.
    """
    if rs.center is not None:
        raise PreconditionError("levi_decompose_adjoint needs a simple root system")
    fibers: Dict[Tuple[int, ...], List[Vector]] = {}
    for root in rs.all_roots():
        fibers.setdefault(theta_grading(ts, root), []).append(root)
    components = []
    for grading in sorted(fibers):
        if not any(grading):
            continue
        roots = fibers[grading]
        minimal = [a for a in roots if not any(b != a and rs.is_positive_combination(vsub(a, b)) for b in roots)]
        if len(minimal) != 1:
            raise GvmError(f"fiber {grading} has {len(minimal)} minimal roots")
        lowest = minimal[0]
        highest = ts.rs.act(ts.longest_word(), lowest)
        components.append(AdjointComponent(grading, lowest, highest, len(roots), 'graded'))
    zero = tuple(0 for _ in ts.complement)
    components.append(AdjointComponent(zero, rs.from_fundamental([0] * rs.rank),
                                       rs.from_fundamental([0] * rs.rank), len(ts.complement), 'center'))
    for component in ts.components:
        top = ts.component_positive_roots(component)[-1]
        components.append(AdjointComponent(zero, vscale(-1, top), top,
                                           ts.levi_dimension(top), 'levi'))
    return components
