"""
Root System Service - root systems in Bourbaki ε-coordinates with Weyl machinery.

This service builds the simple Lie algebras of types A-G and the reductive
gl_n, exactly in the ε-coordinates of the standard Bourbaki tables, and
provides the Weyl-group and parabolic (Θ) data every other service needs.

Features:
    - Simple roots, positive roots, Cartan matrix, fundamental weights, ρ
    - Highest root, marks, highest short root, Weyl group order
    - Reflections, reduced-word actions, dot action, dominant conjugates
    - Orbit enumeration with minimal words (never materializes all of W)
    - ThetaSubset: Levi data Σ(g_Θ)⁺, ρ(Θ), ρ_Θ, components, W(Θ)
    - NormalizedForm: the trace form ⟨ , ⟩ of a representation
    - Cached construction (cachetools) keyed by type label
"""

import logging
from collections import deque
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from cachetools import LRUCache, cached
from django.conf import settings

from gvm.exceptions import InputError, NotARootError, PreconditionError
from gvm.services.exactalg import LinearForm, to_rational

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Word = Tuple[int, ...]

HALF = Fraction(1, 2)


# ============================================================================
# VECTOR HELPERS
# ============================================================================

def vec(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def vzero(dim: int) -> Vector:
    return (Fraction(0),) * dim


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, v: Sequence) -> Vector:
    return tuple(s * a for a in v)


def vdot(u: Sequence, v: Sequence):
    """Standard form (ε_i, ε_j) = δ_ij; either side may hold LinearForm entries."""
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def vsum(vectors: Iterable[Vector], dim: int) -> Vector:
    total = vzero(dim)
    for v in vectors:
        total = vadd(total, v)
    return total


def unit(dim: int, index: int, value=1) -> Vector:
    """value·ε_index with 1-based index."""
    return tuple(Fraction(value) if k == index - 1 else Fraction(0) for k in range(dim))


# ============================================================================
# TYPE TABLES
# ============================================================================

SUPPORTED_RANGES = {
    'A': (1, None), 'B': (2, None), 'C': (2, None), 'D': (4, None),
    'E': (6, 8), 'F': (4, 4), 'G': (2, 2), 'gl': (2, None),
}


def _classical_simple_roots(family: str, n: int) -> Tuple[int, List[Vector]]:
    if family in ('A', 'gl'):
        dim = n + 1 if family == 'A' else n
        roots = [vsub(unit(dim, i), unit(dim, i + 1)) for i in range(1, dim)]
        return dim, roots
    roots = [vsub(unit(n, i), unit(n, i + 1)) for i in range(1, n)]
    if family == 'B':
        roots.append(unit(n, n))
    elif family == 'C':
        roots.append(unit(n, n, 2))
    else:
        roots.append(vadd(unit(n, n - 1), unit(n, n)))
    return n, roots


def _exceptional_simple_roots(family: str, rank: int) -> Tuple[int, List[Vector]]:
    if family == 'E':
        roots = [
            vec([HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF]),
            vadd(unit(8, 1), unit(8, 2)),
            vsub(unit(8, 2), unit(8, 1)),
        ]
        roots += [vsub(unit(8, k - 1), unit(8, k - 2)) for k in range(4, 9)]
        return 8, roots[:rank]
    if family == 'F':
        return 4, [
            vsub(unit(4, 2), unit(4, 3)),
            vsub(unit(4, 3), unit(4, 4)),
            unit(4, 4),
            vec([HALF, -HALF, -HALF, -HALF]),
        ]
    return 3, [vec([1, -1, 0]), vec([-2, 1, 1])]


WEYL_ORDERS_EXCEPTIONAL = {
    ('E', 6): 51840, ('E', 7): 2903040, ('E', 8): 696729600,
    ('F', 4): 1152, ('G', 2): 12,
}


def weyl_group_order(family: str, rank: int) -> int:
    """|W| from the classification; gl_n is labelled by n (W = S_n)."""
    if family == 'A':
        return factorial(rank + 1)
    if family == 'gl':
        return factorial(rank)
    if family in ('B', 'C'):
        return 2 ** rank * factorial(rank)
    if family == 'D':
        return 2 ** (rank - 1) * factorial(rank)
    return WEYL_ORDERS_EXCEPTIONAL[(family, rank)]


# ============================================================================
# ROOT SYSTEM
# ============================================================================

class RootSystem:
    """
    A root system in Bourbaki ε-coordinates.

    Features:
        - Ψ, Σ⁺, Cartan matrix, Λ_i, ρ, α_max with its marks
        - Weyl reflections, words, dot action, orbits
        - Coordinates: Dynkin labels and (rational) root coordinates

    Simple indices are 1-based everywhere. For gl_n the label is "gl<n>",
    the simple roots are those of A_{n-1} and the center direction
    ε_1+...+ε_n is carried by `center`.
    """

    def __init__(self, family: str, rank: int):
        self.family = family
        self.n = rank
        self.label = f"gl{rank}" if family == 'gl' else f"{family}{rank}"
        if family in ('E', 'F', 'G'):
            self.dim, simple = _exceptional_simple_roots(family, rank)
        else:
            self.dim, simple = _classical_simple_roots(family, rank)
        self.simple_roots: Tuple[Vector, ...] = tuple(simple)
        self.rank = len(self.simple_roots)
        self.indices: Tuple[int, ...] = tuple(range(1, self.rank + 1))
        self.center: Optional[Vector] = vec([1] * self.dim) if family == 'gl' else None

        self._norms = tuple(vdot(a, a) for a in self.simple_roots)
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(2 * vdot(ai, aj) / vdot(ai, ai)) for aj in self.simple_roots)
            for ai in self.simple_roots
        )
        self.fundamental_weights: Tuple[Vector, ...] = self._fundamental_weights()
        self.positive_roots: Tuple[Vector, ...] = self._positive_roots()
        self._root_set = frozenset(self.positive_roots) | frozenset(
            vscale(-1, r) for r in self.positive_roots
        )
        self.rho: Vector = vsum(self.fundamental_weights, self.dim)
        self.highest_root: Vector = self.positive_roots[-1]
        self.marks: Tuple[Fraction, ...] = self.root_coordinates(self.highest_root)
        self.weyl_order = weyl_group_order(family, rank)
        self.longest_word: Word = self.dominant_conjugate(vscale(-1, self.rho))[1]
        logger.debug("built %s: |Σ⁺|=%d, |W|=%d", self.label, len(self.positive_roots), self.weyl_order)

    # ------------------------------------------------------------------ construction

    def _fundamental_weights(self) -> Tuple[Vector, ...]:
        # Λ_i = Σ_j c_ij α_j with c = M⁻¹, M_jk = ⟨α_j, α_k^∨⟩.
        size = self.rank
        gram = sympy.Matrix(size, size, lambda j, k: sympy.Rational(
            str(2 * vdot(self.simple_roots[j], self.simple_roots[k]) / self._norms[k])
        ))
        inverse = gram.inv()
        weights = []
        for i in range(size):
            weight = vzero(self.dim)
            for j in range(size):
                c = inverse[i, j]
                weight = vadd(weight, vscale(Fraction(int(c.p), int(c.q)), self.simple_roots[j]))
            weights.append(weight)
        return tuple(weights)

    def _positive_roots(self) -> Tuple[Vector, ...]:
        # Layer by height using root strings: β + α_i is a root iff p - ⟨β, α_i^∨⟩ > 0.
        roots = set(self.simple_roots)
        layer = list(self.simple_roots)
        while layer:
            following = []
            for beta in layer:
                for i, alpha in enumerate(self.simple_roots):
                    if beta == alpha:
                        continue
                    p = 0
                    lower = vsub(beta, alpha)
                    while lower in roots:
                        p += 1
                        lower = vsub(lower, alpha)
                    if p - self.pairing(beta, i + 1) > 0:
                        candidate = vadd(beta, alpha)
                        if candidate not in roots:
                            roots.add(candidate)
                            following.append(candidate)
            layer = following
        return tuple(sorted(roots, key=lambda r: (self.height(r), self.root_coordinates(r))))

    # ------------------------------------------------------------------ coordinates

    def coweight(self, i: int) -> Vector:
        """ω_i^∨ = 2Λ_i/(α_i, α_i), dual to the simple roots."""
        return vscale(2 / self._norms[i - 1], self.fundamental_weights[i - 1])

    def root_coordinates(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Coefficients of the traceless part of v on Ψ (rational for weights)."""
        return tuple(vdot(v, self.coweight(i)) for i in self.indices)

    def height(self, v: Sequence) -> Fraction:
        return sum(self.root_coordinates(v), Fraction(0))

    def pairing(self, v: Sequence, i: int) -> Fraction:
        """⟨v, α_i^∨⟩ = 2(v, α_i)/(α_i, α_i)."""
        return 2 * vdot(v, self.simple_roots[i - 1]) / self._norms[i - 1]

    def coroot_pairing(self, v: Sequence, beta: Sequence) -> Fraction:
        return 2 * vdot(v, beta) / vdot(beta, beta)

    def labels(self, v: Sequence) -> Tuple[Fraction, ...]:
        return tuple(self.pairing(v, i) for i in self.indices)

    def trace(self, v: Sequence) -> Fraction:
        return sum(v, Fraction(0)) if self.center else Fraction(0)

    def from_fundamental(self, coords: Sequence) -> Vector:
        """
        Weight from fundamental coordinates.

        For gl_n an optional n-th entry gives the trace Σ v_i; without it the
        weight is traceless.
        """
        coords = [to_rational(c) for c in coords]
        expected = (self.rank, self.rank + 1) if self.center else (self.rank,)
        if len(coords) not in expected:
            raise InputError(
                f"{self.label} weights take {' or '.join(map(str, expected))} fundamental coordinates, got {len(coords)}"
            )
        weight = vzero(self.dim)
        for c, fundamental in zip(coords, self.fundamental_weights):
            weight = vadd(weight, vscale(c, fundamental))
        if self.center and len(coords) == self.rank + 1:
            weight = vadd(weight, vscale(coords[-1] / self.dim, self.center))
        return weight

    def from_eps(self, coords: Sequence) -> Vector:
        if len(coords) != self.dim:
            raise InputError(f"{self.label} weights have {self.dim} ε-coordinates, got {len(coords)}")
        return vec(coords)

    def is_integral(self, v: Sequence) -> bool:
        return all(label.denominator == 1 for label in self.labels(v))

    def is_dominant(self, v: Sequence) -> bool:
        return all(label >= 0 for label in self.labels(v))

    def is_dominant_integral(self, v: Sequence) -> bool:
        return self.is_integral(v) and self.is_dominant(v)

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._root_set

    def all_roots(self) -> List[Vector]:
        return list(self.positive_roots) + [vscale(-1, r) for r in reversed(self.positive_roots)]

    def is_positive_combination(self, v: Sequence) -> bool:
        """v ∈ R₊: a non-negative integer combination of Ψ (and traceless)."""
        if self.center and self.trace(v) != 0:
            return False
        coords = self.root_coordinates(v)
        if any(c.denominator != 1 or c < 0 for c in coords):
            return False
        return vsum((vscale(c, a) for c, a in zip(coords, self.simple_roots)), self.dim) == tuple(v)

    # ------------------------------------------------------------------ Weyl group

    def reflect(self, alpha: Sequence, mu: Sequence) -> Vector:
        """
        w_α μ = μ - 2(μ,α)/(α,α) α.

        Raises:
            NotARootError: when α is not a root
        """
        if not self.is_root(alpha):
            raise NotARootError(f"{tuple(map(str, alpha))} is not a root of {self.label}")
        return vsub(mu, vscale(self.coroot_pairing(mu, alpha), alpha))

    def simple_reflect(self, i: int, mu: Sequence) -> Vector:
        return vsub(mu, vscale(self.pairing(mu, i), self.simple_roots[i - 1]))

    def act(self, word: Word, mu: Sequence) -> Vector:
        """Apply a word of simple reflections, rightmost letter first."""
        result = tuple(mu)
        for i in reversed(word):
            result = self.simple_reflect(i, result)
        return result

    def dot(self, word: Word, mu: Sequence) -> Vector:
        """w.μ = w(μ+ρ) - ρ"""
        return vsub(self.act(word, vadd(mu, self.rho)), self.rho)

    def dominant_conjugate(self, mu: Sequence, indices: Optional[Sequence[int]] = None) -> Tuple[Vector, Word]:
        """
        Dominant W-conjugate of μ and a reduced word w with w(μ) dominant.

        Restricting `indices` conjugates within the parabolic subgroup they
        generate. The word length gives the sign (-1)^ℓ(w).
        """
        indices = tuple(indices) if indices is not None else self.indices
        current = tuple(mu)
        word: Word = ()
        while True:
            for i in indices:
                if self.pairing(current, i) < 0:
                    current = self.simple_reflect(i, current)
                    word = (i,) + word
                    break
            else:
                return current, word

    def orbit(self, mu: Sequence, indices: Optional[Sequence[int]] = None) -> Dict[Vector, Word]:
        """
        Orbit of μ under the (parabolic) Weyl group with minimal words.

        Each orbit point ν maps to a reduced word w of minimal length with
        w(μ_dom) = ν, where μ_dom is the dominant conjugate of μ.
        """
        indices = tuple(indices) if indices is not None else self.indices
        start, _ = self.dominant_conjugate(mu, indices)
        words: Dict[Vector, Word] = {start: ()}
        layer = [start]
        while layer:
            following = []
            for nu in layer:
                for i in indices:
                    if self.pairing(nu, i) > 0:
                        image = self.simple_reflect(i, nu)
                        if image not in words:
                            words[image] = (i,) + words[nu]
                            following.append(image)
            layer = following
        return words

    def longest_element_action(self, mu: Sequence) -> Vector:
        return self.act(self.longest_word, mu)

    def opposition(self, i: int) -> int:
        """Index of -w₀(α_i)."""
        image = vscale(-1, self.longest_element_action(self.simple_roots[i - 1]))
        return self.simple_roots.index(image) + 1

    def dual_weight(self, mu: Sequence) -> Vector:
        """Highest weight of the contragredient: -w₀ μ."""
        return vscale(-1, self.longest_element_action(mu))

    # ------------------------------------------------------------------ invariants

    def weyl_dimension(self, highest: Sequence, roots: Optional[Sequence[Vector]] = None,
                       rho: Optional[Sequence] = None) -> int:
        """Weyl dimension formula ∏ (π+ρ, α)/(ρ, α) over the given positive roots."""
        roots = self.positive_roots if roots is None else roots
        rho = self.rho if rho is None else rho
        shifted = vadd(highest, rho)
        value = Fraction(1)
        for alpha in roots:
            value *= vdot(shifted, alpha) / vdot(rho, alpha)
        if value.denominator != 1:
            raise PreconditionError(f"non-integral Weyl dimension for {tuple(map(str, highest))}")
        return int(value)

    def highest_short_root(self) -> Vector:
        shortest = min(vdot(r, r) for r in self.positive_roots)
        short = [r for r in self.positive_roots if vdot(r, r) == shortest]
        return short[-1]

    def is_diagram_automorphism(self, permutation: Dict[int, int]) -> bool:
        if sorted(permutation) != list(self.indices) or sorted(permutation.values()) != list(self.indices):
            return False
        return all(
            self.cartan[i - 1][j - 1] == self.cartan[permutation[i] - 1][permutation[j] - 1]
            for i in self.indices for j in self.indices
        )

    def connected_components(self, indices: Iterable[int]) -> List[Tuple[int, ...]]:
        remaining = sorted(set(indices))
        components = []
        while remaining:
            queue = deque([remaining[0]])
            component = {remaining[0]}
            while queue:
                i = queue.popleft()
                for j in remaining:
                    if j not in component and self.cartan[i - 1][j - 1] != 0:
                        component.add(j)
                        queue.append(j)
            components.append(tuple(sorted(component)))
            remaining = [j for j in remaining if j not in component]
        return components

    def component_type(self, component: Sequence[int]) -> Tuple[str, int]:
        """
        Cartan type of a connected sub-diagram.

        Example:
            >>> build_root_system('E', 8).component_type((2, 3, 4, 5))
            ('D', 4)
        """
        nodes = list(component)
        size = len(nodes)
        bonds = {}
        for a in nodes:
            for b in nodes:
                if a < b and self.cartan[a - 1][b - 1]:
                    bonds[(a, b)] = self.cartan[a - 1][b - 1] * self.cartan[b - 1][a - 1]
        if 3 in bonds.values():
            return ('G', 2)
        degree = {a: sum(1 for pair in bonds if a in pair) for a in nodes}
        if 2 in bonds.values():
            if size == 2:
                return ('B', 2)
            double = next(pair for pair, m in bonds.items() if m == 2)
            if size == 4 and all(degree[a] == 2 for a in double):
                return ('F', 4)
            norms = [self._norms[a - 1] for a in nodes]
            short = sum(1 for x in norms if x == min(norms))
            return ('B', size) if short == 1 else ('C', size)
        branch = [a for a in nodes if degree[a] == 3]
        if branch:
            centre = branch[0]
            arms = []
            for first in (b for pair in bonds for b in pair if centre in pair and b != centre):
                length, previous, node = 1, centre, first
                while True:
                    nxt = [b for pair in bonds for b in pair
                           if node in pair and b not in (node, previous)]
                    if not nxt:
                        break
                    previous, node = node, nxt[0]
                    length += 1
                arms.append(length)
            arms.sort()
            if arms[:2] == [1, 1]:
                return ('D', size)
            return ('E', size)
        return ('A', size)

    def __repr__(self) -> str:
        return f"RootSystem({self.label})"


# ============================================================================
# REGISTRY
# ============================================================================

_root_system_cache = LRUCache(maxsize=64)


@cached(_root_system_cache)
def build_root_system(family: str, rank: int) -> RootSystem:
    """
    Construct (and memoize) a root system.

    Args:
        family: one of A, B, C, D, E, F, G or "gl"
        rank: the rank (for gl, the n of gl_n)

    Raises:
        InputError: unsupported (type, rank) pair

    Example:
        >>> len(build_root_system('E', 6).positive_roots)
        36
    """
    if family not in SUPPORTED_RANGES:
        raise InputError(f"unsupported root system type '{family}'")
    low, high = SUPPORTED_RANGES[family]
    if rank < low or (high is not None and rank > high):
        raise InputError(f"unsupported rank {rank} for type {family}")
    return RootSystem(family, rank)


class RootSystemRegistry:
    """
    Resolve type labels ("E6", "gl4", "B3") to cached RootSystem instances.

    Features:
        - Label parsing via the shared grammar in services.parsing
        - Memoized construction through build_root_system
    """

    @classmethod
    def get(cls, label: str) -> RootSystem:
        from gvm.services.parsing import parse_type_label

        family, rank = parse_type_label(label)
        return build_root_system(family, rank)

    @classmethod
    def clear(cls) -> None:
        _root_system_cache.clear()


root_system_registry = RootSystemRegistry()


def weyl_reflect(rs: RootSystem, alpha: Sequence, mu: Sequence) -> Vector:
    return rs.reflect(alpha, mu)


def dot_action(rs: RootSystem, word: Word, mu: Sequence) -> Vector:
    return rs.dot(word, mu)


# ============================================================================
# PARABOLIC SUBSETS
# ============================================================================

class ThetaSubset:
    """
    A proper subset Θ ⊊ Ψ and its Levi data.

    Features:
        - Σ(g_Θ)⁺, ρ(Θ), ρ_Θ = ρ - ρ(Θ)
        - Connected components with their Cartan types, |W_Θ|
        - Minimal coset representatives W(Θ) via the orbit of Σ_{j∉Θ} Λ_j
        - Restriction keys and the order ≤_Θ on a_Θ-restrictions
    """

    def __init__(self, rs: RootSystem, indices: Iterable[int]):
        theta = tuple(sorted(set(int(i) for i in indices)))
        for i in theta:
            if i not in rs.indices:
                raise InputError(f"simple root index {i} out of range 1..{rs.rank}")
        if len(theta) == rs.rank:
            raise PreconditionError("Θ = Ψ is not allowed; Θ must be a proper subset")
        self.rs = rs
        self.theta: Tuple[int, ...] = theta
        self.complement: Tuple[int, ...] = tuple(i for i in rs.indices if i not in theta)
        self.positive_roots: Tuple[Vector, ...] = tuple(
            r for r in rs.positive_roots
            if all(c == 0 for i, c in zip(rs.indices, rs.root_coordinates(r)) if i not in theta)
        )
        self.rho_levi: Vector = vscale(HALF, vsum(self.positive_roots, rs.dim))
        self.rho_theta: Vector = vsub(rs.rho, self.rho_levi)
        self.components: List[Tuple[int, ...]] = rs.connected_components(theta)
        self._mu_theta = vsum((rs.fundamental_weights[j - 1] for j in self.complement), rs.dim)
        self._restriction_basis = [rs.coweight(j) for j in self.complement]

    @property
    def levi_weyl_order(self) -> int:
        order = 1
        for component in self.components:
            family, size = self.rs.component_type(component)
            order *= weyl_group_order(family, size)
        return order

    @property
    def coset_count(self) -> int:
        return self.rs.weyl_order // self.levi_weyl_order

    def contains_root(self, beta: Sequence) -> bool:
        return tuple(beta) in self.positive_roots or vscale(-1, beta) in self.positive_roots

    def component_positive_roots(self, component: Sequence[int]) -> List[Vector]:
        component = set(component)
        rs = self.rs
        return [
            r for r in self.positive_roots
            if all(c == 0 for i, c in zip(rs.indices, rs.root_coordinates(r)) if i not in component)
        ]

    def is_dominant(self, v: Sequence) -> bool:
        return all(self.rs.pairing(v, i) >= 0 for i in self.theta)

    def is_antidominant(self, v: Sequence) -> bool:
        return all(self.rs.pairing(v, i) <= 0 for i in self.theta)

    def longest_word(self) -> Word:
        """w_{0,Θ}"""
        return self.rs.dominant_conjugate(vscale(-1, self.rs.rho), self.theta)[1]

    def levi_lowest(self, highest: Sequence) -> Vector:
        return self.rs.act(self.longest_word(), highest)

    def levi_dimension(self, highest: Sequence) -> int:
        return self.rs.weyl_dimension(highest, self.positive_roots, self.rho_levi)

    def min_coset_reps(self, limit: Optional[int] = None) -> List[Word]:
        """
        Reduced words of the minimal-length representatives W(Θ).

        Raises:
            PreconditionError: when |W(Θ)| exceeds the enumeration limit
        """
        limit = settings.GVM_WEYL_ENUMERATION_LIMIT if limit is None else limit
        if self.coset_count > limit:
            raise PreconditionError(
                f"|W(Θ)| = {self.coset_count} exceeds the enumeration limit {limit}"
            )
        words = self.rs.orbit(self._mu_theta).values()
        return sorted(words, key=lambda w: (len(w), w))

    def levi_elements(self, limit: Optional[int] = None) -> List[Word]:
        """Reduced words for every element of W_Θ (identified through w(ρ))."""
        limit = settings.GVM_WEYL_ENUMERATION_LIMIT if limit is None else limit
        if self.levi_weyl_order > limit:
            raise PreconditionError(
                f"|W_Θ| = {self.levi_weyl_order} exceeds the enumeration limit {limit}"
            )
        words = self.rs.orbit(self.rs.rho, self.theta).values()
        return sorted(words, key=lambda w: (len(w), w))

    def restriction_key(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Coordinates of v|_{a_Θ} against {α_j|_{a_Θ}: j ∉ Θ} (and the trace for gl)."""
        key = tuple(vdot(v, w) for w in self._restriction_basis)
        if self.rs.center:
            key += (self.rs.trace(v),)
        return key

    def leq(self, mu: Sequence, nu: Sequence) -> bool:
        """μ|_{a_Θ} ≤_Θ ν|_{a_Θ}"""
        a, b = self.restriction_key(mu), self.restriction_key(nu)
        if self.rs.center and a[-1] != b[-1]:
            return False
        return all((y - x).denominator == 1 and y >= x for x, y in zip(a, b))

    def __repr__(self) -> str:
        return f"ThetaSubset({self.rs.label}, {list(self.theta)})"


def theta_subset(rs: RootSystem, indices: Iterable[int]) -> ThetaSubset:
    return ThetaSubset(rs, indices)


def min_coset_reps(ts: ThetaSubset) -> List[Word]:
    return ts.min_coset_reps()


# ============================================================================
# TRACE FORM
# ============================================================================

class NormalizedForm:
    """
    The form ⟨μ,ν⟩ = (μ₀,ν₀)/C_π + (μ_c,ν_c)/C'_π dual to trace(π(X)π(Y)).

    μ₀ and μ_c are the traceless and central parts; the central part only
    exists for gl_n. Either argument of `pair` may contain LinearForm
    entries, which is how ⟨λ_Θ, ϖ⟩ becomes a function of λ.
    """

    def __init__(self, rs: RootSystem, highest: Vector, constant: Fraction,
                 central_constant: Optional[Fraction] = None):
        self.rs = rs
        self.highest = highest
        self.constant = constant
        self.central_constant = central_constant

    def kernel(self, v: Sequence) -> Vector:
        """K(v) with ⟨u, v⟩ = (u, K(v))."""
        v = tuple(v)
        if self.rs.center is None:
            return vscale(1 / self.constant, v)
        central = vscale(self.rs.trace(v) / self.rs.dim, self.rs.center)
        traceless = vsub(v, central)
        return vadd(vscale(1 / self.constant, traceless), vscale(1 / self.central_constant, central))

    def pair(self, u: Sequence, v: Sequence):
        value = vdot(u, self.kernel(v))
        return value if isinstance(value, LinearForm) else Fraction(value)

    def norm(self, v: Sequence):
        return self.pair(v, v)

    def linear(self, u: Sequence[LinearForm], v: Sequence) -> LinearForm:
        value = vdot(u, self.kernel(v))
        return value if isinstance(value, LinearForm) else LinearForm(value)

    def __repr__(self) -> str:
        extra = f", C'={self.central_constant}" if self.central_constant is not None else ""
        return f"NormalizedForm({self.rs.label}, C={self.constant}{extra})"


def trace_constants(rs: RootSystem, multiplicities: Dict[Vector, int]) -> Dict[int, Fraction]:
    """C_π computed separately from every simple root: Σ m(ϖ)(α,ϖ)²/(α,α)."""
    constants = {}
    for i, alpha in zip(rs.indices, rs.simple_roots):
        norm = vdot(alpha, alpha)
        constants[i] = sum((m * vdot(alpha, w) ** 2 / norm for w, m in multiplicities.items()), Fraction(0))
    return constants


def trace_form(rs: RootSystem, highest: Sequence) -> NormalizedForm:
    """
    Normalized trace form of the irreducible representation with this highest weight.

    Raises:
        PreconditionError: non-dominant or degenerate (zero) representation

    Example:
        >>> E6 = build_root_system('E', 6)
        >>> trace_form(E6, E6.fundamental_weights[0]).constant
        Fraction(6, 1)
    """
    from gvm.services.weights import weight_system

    ws = weight_system(rs, highest)
    constants = trace_constants(rs, ws.multiplicities)
    values = set(constants.values())
    if len(values) != 1:
        raise PreconditionError(f"trace constants disagree across simple roots: {constants}")
    constant = values.pop()
    if constant == 0:
        raise PreconditionError("the trivial representation gives a degenerate trace form")
    central = None
    if rs.center:
        t = rs.trace(ws.highest)
        central = Fraction(ws.dimension) * t * t / rs.dim
        if central == 0:
            raise PreconditionError("a traceless gl_n representation gives a degenerate trace form on the center")
    return NormalizedForm(rs, ws.highest, constant, central)
