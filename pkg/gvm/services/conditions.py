"""
Conditions Service - existence predicates and type-specific certification.

Features:
    - gapexist_check: the equivalent conditions on λ_Θ+ρ for the gap to exist
    - coset_dot_orbit: the points w.λ_Θ, w ∈ W(Θ)
    - prop_every_certify: certification rules for natural, G₂, D_n and
      exceptional representations
    - gln_linkage_check: transposition test on λ̄ against the Λ_k set condition
    - recursion_closed_forms: the f/g recursions and their closed forms
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from cachetools import LRUCache, cached
from django.conf import settings

from gvm.exceptions import GvmError, InputError, PreconditionError
from gvm.services.branching import levi_lowest_weights
from gvm.services.conventions import Parametrization
from gvm.services.exactalg import LinearForm, MultiPoly, Scalar, to_rational
from gvm.services.gap import CERTIFIED, NOT_CERTIFIED, is_dominant_shift
from gvm.services.rootsys import RootSystem, ThetaSubset, Vector, unit, vadd, vdot, vsub, vsum
from gvm.services.weights import WeightSystem, weight_system

logger = logging.getLogger(__name__)


def is_regular_shift(rs: RootSystem, shifted: Sequence) -> bool:
    """⟨λ_Θ+ρ, α⟩ ≠ 0 for every root α."""
    return all(vdot(shifted, beta) != 0 for beta in rs.positive_roots)


# ============================================================================
# EXISTENCE CONDITIONS
# ============================================================================

@dataclass
class GapExistence:
    regular: bool
    dominant: bool
    condition_ii: bool
    condition_iii: bool
    condition_iv: bool

    @property
    def condition_i(self) -> Optional[bool]:
        """Known only when λ_Θ+ρ is dominant, where it is equivalent to ii-iv."""
        if not self.dominant:
            return None
        return self.condition_ii and self.condition_iii and self.condition_iv

    @property
    def consistent(self) -> bool:
        return self.condition_ii == self.condition_iii == self.condition_iv


def gapexist_check(param: Parametrization, assignment: Mapping[int, Scalar],
                   limit: Optional[int] = None) -> GapExistence:
    """
    Evaluate the existence conditions at a rational λ.

        ii)  β ∈ Σ⁺∖Σ(g_Θ), ⟨λ_Θ+ρ, β⟩ = 0  ⇒  β ⊥ Θ
        iii) W(Θ).λ_Θ ∩ W_Θ.λ_Θ = {λ_Θ}
        iv)  (W(Θ)w).λ_Θ ∩ W(Θ).λ_Θ ≠ ∅ for w ∈ W_Θ only when w = e

    Raises:
        PreconditionError: W(Θ) or W_Θ exceeds the enumeration limit
    """
    rs, ts = param.rs, param.ts
    lam = param.at(param.check_assignment(assignment))
    shifted = vadd(lam, rs.rho)
    levi = set(ts.positive_roots)
    theta_roots = [rs.simple_roots[i - 1] for i in ts.theta]

    condition_ii = all(
        all(vdot(beta, alpha) == 0 for alpha in theta_roots)
        for beta in rs.positive_roots
        if beta not in levi and vdot(shifted, beta) == 0
    )

    cosets = ts.min_coset_reps(limit)
    levi_words = ts.levi_elements(limit)
    coset_orbit = {rs.dot(word, lam) for word in cosets}
    levi_orbit = {rs.dot(word, lam) for word in levi_words}
    condition_iii = coset_orbit & levi_orbit == {lam}

    condition_iv = True
    for word in levi_words:
        if not word:
            continue
        moved = rs.dot(word, lam)
        if any(rs.dot(coset, moved) in coset_orbit for coset in cosets):
            condition_iv = False
            break

    return GapExistence(is_regular_shift(rs, shifted), is_dominant_shift(rs, shifted),
                        condition_ii, condition_iii, condition_iv)


@dataclass
class CosetDotOrbit:
    """The points w.λ_Θ for w ∈ W(Θ), symbolic or at a numeric λ."""

    param: Parametrization
    words: List[Tuple[int, ...]]
    points: List[tuple]
    assignment: Optional[Dict[int, Fraction]] = None

    @property
    def distinct(self) -> int:
        return len(set(self.points))


def coset_dot_orbit(param: Parametrization, assignment: Optional[Mapping[int, Scalar]] = None,
                    limit: Optional[int] = None) -> CosetDotOrbit:
    """
    The dot-orbit W(Θ).λ_Θ, one point per minimal coset representative.

    Without an assignment the points are LinearForm vectors in the
    variables of the parametrization.

    Example:
        >>> G2 = build_root_system('G', 2)
        >>> len(coset_dot_orbit(FundamentalParam(theta_subset(G2, [1]))).points)
        6
    """
    rs, ts = param.rs, param.ts
    values = None
    if assignment is None:
        lam = tuple(entry if isinstance(entry, LinearForm) else LinearForm(entry)
                    for entry in param.lambda_theta)
    else:
        values = param.check_assignment(assignment)
        lam = param.at(values)
    words = ts.min_coset_reps(limit)
    points = []
    for word in words:
        point = rs.dot(word, lam)
        if values is None:
            point = tuple(entry if isinstance(entry, LinearForm) else LinearForm(entry) for entry in point)
        points.append(point)
    logger.debug("W(Θ).λ_Θ for %s: %d points", param, len(points))
    return CosetDotOrbit(param, list(words), points, values)


# ============================================================================
# TYPE-SPECIFIC CERTIFICATION
# ============================================================================

IOTA_E = {1: 1, 2: 2, 3: 1}
IOTA_F = {1: 1, 2: 1, 3: 4, 4: 4}
HAT_F = {1: (1,), 2: (1, 2), 3: (3, 4), 4: (4,)}


def iota(rs: RootSystem, i: int) -> int:
    """ι(α_i) for E_n and F₄."""
    if rs.family == 'E':
        return IOTA_E.get(i, rs.rank)
    if rs.family == 'F':
        return IOTA_F[i]
    raise InputError(f"ι is defined for E and F, not {rs.label}")


def alpha_hat(rs: RootSystem, i: int) -> Vector:
    """The smallest root above both α_i and ι(α_i)."""
    if rs.family == 'E':
        if i in (1, 2):
            indices = (i,)
        elif i == 3:
            indices = (1, 3)
        else:
            indices = tuple(range(i, rs.rank + 1))
    elif rs.family == 'F':
        indices = HAT_F[i]
    else:
        raise InputError(f"α̂ is defined for E and F, not {rs.label}")
    return vsum((rs.simple_roots[j - 1] for j in indices), rs.dim)


@dataclass
class EveryVerdict:
    clause: str
    conditions: Dict[str, bool]
    verdict: str
    annihilator: bool
    extra_ideals: List[int] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def _require(ws: WeightSystem, highest: Vector, description: str) -> None:
    if ws.highest != tuple(highest):
        raise InputError(f"this certification rule needs {description} of {ws.rs.label}")


def _dual_weight_system(rs: RootSystem, index: int) -> WeightSystem:
    """π*_α: lowest weight -Λ_α, highest weight Λ_{opposition(α)}."""
    return weight_system(rs, rs.fundamental_weights[rs.opposition(index) - 1])


def _o2n_condition(rs: RootSystem, ts: ThetaSubset, shifted: Vector) -> bool:
    n = rs.rank
    tail = vadd(rs.simple_roots[n - 2], rs.simple_roots[n - 1])
    for i in range(2, n):
        if i - 1 in ts.theta and i not in ts.theta:
            span = vsum((rs.simple_roots[j - 1] for j in range(i, n - 1)), rs.dim)
            if vdot(shifted, vadd(vadd(span, span), tail)) == 0:
                return False
    return True


def _strongly_regular(shifted: Vector) -> bool:
    """No nontrivial signed permutation fixes the vector."""
    if any(v == 0 for v in shifted):
        return False
    return len({abs(v) for v in shifted}) == len(shifted)


def _half_spin_condition(rs: RootSystem, ts: ThetaSubset, shifted: Vector, index: int) -> bool:
    ws_star = _dual_weight_system(rs, index)
    big = rs.fundamental_weights[index - 1]
    alpha = rs.simple_roots[index - 1]
    floor = vsub(alpha, big)
    for weight in levi_lowest_weights(ws_star, ts).highest_weights():
        if weight != floor and ws_star.leq(floor, weight):
            if vdot(shifted, vsub(vadd(weight, big), alpha)) == 0:
                return False
    return True


def _d_clause(rs: RootSystem, param: Parametrization, shifted: Vector, regular: bool) -> EveryVerdict:
    ts = param.ts
    n = rs.rank
    ends = {n - 1, n} & set(ts.theta)
    if ends == {n - 1, n}:
        return EveryVerdict('iii', {'regular': regular}, CERTIFIED if regular else NOT_CERTIFIED, False)
    lam = vsub(shifted, rs.rho)
    if not ends and vdot(lam, vsub(rs.simple_roots[n - 1], rs.simple_roots[n - 2])) == 0:
        return EveryVerdict('iii', {'regular': regular}, CERTIFIED if regular else NOT_CERTIFIED, False,
                            notes=["q is replaced by q′ of degree one less"])

    strong = _strongly_regular(shifted)
    o2n = _o2n_condition(rs, ts, shifted)
    conditions = {'regular': regular, 'strongly_regular': strong, 'o2n': o2n}
    if strong or (not ends and regular and o2n):
        return EveryVerdict('iii', conditions, CERTIFIED, False)
    if len(ends) == 1:
        index = ends.pop()
        extra = _half_spin_condition(rs, ts, shifted, index)
        conditions['half_spin'] = extra
        if regular and o2n and extra:
            return EveryVerdict('iii', conditions, CERTIFIED, False, extra_ideals=[index],
                                notes=[f"needs the ideal of π*_{index} as well"])
    return EveryVerdict('iii', conditions, NOT_CERTIFIED, False)


def _box_hits_interval(coefficients: Sequence[Fraction], bounds: Sequence[int]) -> bool:
    """Some 0 ≠ c ≤ bounds (componentwise, c ≥ 0) gives Σ c_i a_i ∈ [-1, 0]."""
    sums: Set[Fraction] = set()
    for a, bound in zip(coefficients, bounds):
        steps = [c * a for c in range(1, bound + 1)]
        sums = sums | set(steps) | {s + step for s in sums for step in steps}
    return any(-1 <= s <= 0 for s in sums)


def _exceptional_clause(rs: RootSystem, param: Parametrization, shifted: Vector,
                        regular: bool, clause: str) -> EveryVerdict:
    ts = param.ts
    fundrep = True
    exc2 = True
    for i in ts.theta:
        j = iota(rs, i)
        big = rs.fundamental_weights[j - 1]
        ws_star = _dual_weight_system(rs, j)
        hat = alpha_hat(rs, i)
        floor = vsub(hat, big)
        for weight in levi_lowest_weights(ws_star, ts).lowest_weights():
            if weight != floor and ws_star.leq(floor, weight):
                if 2 * vdot(shifted, vsub(vadd(weight, big), hat)) == vdot(weight, weight) - vdot(big, big):
                    fundrep = False
        bound = rs.root_coordinates(vsub(vadd(big, ws_star.highest), hat))
        scale = vdot(big, big)
        coefficients = [2 * vdot(shifted, alpha) / scale for alpha in rs.simple_roots]
        if _box_hits_interval(coefficients, [int(b) for b in bound]):
            exc2 = False
    conditions = {'regular': regular, 'fundrep': fundrep, 'gapexc2': exc2}
    extra = sorted({iota(rs, i) for i in ts.theta})
    verdict = CERTIFIED if regular and fundrep else NOT_CERTIFIED
    return EveryVerdict(clause, conditions, verdict, False, extra_ideals=extra)


def prop_every_certify(ws: WeightSystem, param: Parametrization,
                       assignment: Mapping[int, Scalar]) -> EveryVerdict:
    """
    Type-specific certification of the gap at a rational λ.

        gl_n, A, B, C natural and G₂ 7-dim: λ_Θ+ρ regular
        D_n natural: regular, q′ slice, strong regularity or the O(2n) condition
        E_n (any π) and F₄ with π = π*_{α4}: regularity and the fundamental
        representation condition for the ideals of π*_{ι(α)}

    Raises:
        InputError: the representation does not match the rule for its type
    """
    rs = ws.rs
    if param.rs is not rs:
        raise InputError("the parametrization belongs to another root system")
    lam = param.at(param.check_assignment(assignment))
    shifted = vadd(lam, rs.rho)
    regular = is_regular_shift(rs, shifted)
    dominant = is_dominant_shift(rs, shifted)

    if rs.family in ('gl', 'A', 'B', 'C'):
        natural = unit(rs.dim, 1) if rs.family == 'gl' else rs.fundamental_weights[0]
        _require(ws, natural, "the natural representation")
        result = EveryVerdict('i', {'regular': regular}, CERTIFIED if regular else NOT_CERTIFIED, False)
    elif rs.family == 'G':
        _require(ws, rs.fundamental_weights[0], "the 7-dimensional representation")
        result = EveryVerdict('ii', {'regular': regular}, CERTIFIED if regular else NOT_CERTIFIED, False)
    elif rs.family == 'D':
        _require(ws, rs.fundamental_weights[0], "the natural representation")
        result = _d_clause(rs, param, shifted, regular)
    elif rs.family == 'E':
        result = _exceptional_clause(rs, param, shifted, regular, 'iv')
    else:
        _require(ws, rs.fundamental_weights[3], "π*_{α4}")
        result = _exceptional_clause(rs, param, shifted, regular, 'v')

    result.annihilator = result.verdict == CERTIFIED and dominant and not result.extra_ideals
    logger.info("type rule %s for %s: %s", result.clause, param, result.verdict)
    return result


# ============================================================================
# gl_n LINKAGE
# ============================================================================

@dataclass
class GlnLinkage:
    blocks: Tuple[int, ...]
    lambda_bar: Tuple[Fraction, ...]
    witnesses: List[Tuple[int, int]]
    set_witnesses: List[Tuple[int, int]]

    @property
    def holds(self) -> bool:
        return bool(self.witnesses)


def gl_lambda_bar(blocks: Sequence[int], values: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    """λ̄_ν = λ_k + (ν-1) - (n-1)/2 for n_{k-1} < ν ≤ n_k."""
    n = blocks[-1]
    bounds = (0,) + tuple(blocks)
    entries = []
    for k in range(1, len(bounds)):
        for nu in range(bounds[k - 1] + 1, bounds[k] + 1):
            entries.append(to_rational(values[k - 1]) + (nu - 1) - Fraction(n - 1, 2))
    return tuple(entries)


def _shuffles(parts: Sequence[Tuple[Fraction, ...]], n: int) -> Set[Tuple[Fraction, ...]]:
    """All placements of the parts that keep the order inside each part."""
    free = [tuple(range(n))]
    placements = [dict()]
    for part in parts:
        following = []
        for positions_left, placed in zip(free, placements):
            for chosen in combinations(positions_left, len(part)):
                filled = dict(placed)
                filled.update(zip(chosen, part))
                following.append((tuple(p for p in positions_left if p not in chosen), filled))
        free = [f for f, _ in following]
        placements = [p for _, p in following]
    return {tuple(p[i] for i in range(n)) for p in placements}


def _set_condition(sets: Sequence[Set[Fraction]], j: int) -> List[int]:
    found = []
    mine = sets[j - 1]
    for k in range(1, len(sets) + 1):
        other = sets[k - 1]
        if k == j or not (mine & other) or mine <= other:
            continue
        if all((b - a) * (k - j) > 0 for a in mine - other for b in other):
            found.append(k)
    return found


def gln_linkage_check(blocks: Sequence[int], values: Sequence[Scalar],
                      limit: Optional[int] = None) -> GlnLinkage:
    """
    Whether a transposition (ν, ν+1) inside a block moves λ̄ into W(Θ)λ̄.

    W(Θ)λ̄ is enumerated as the order-preserving shuffles of the blocks; the
    answer is compared with the Λ_k set condition block by block.

    Raises:
        InputError: malformed blocks or a wrong number of values
        PreconditionError: too many shuffles to enumerate
        GvmError: the two descriptions disagree
    """
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b <= a for a, b in zip((0,) + blocks, blocks)):
        raise InputError(f"block sequence {list(blocks)} is not strictly increasing from 0")
    if len(values) != len(blocks):
        raise InputError(f"expected {len(blocks)} lambda value(s), got {len(values)}")
    n = blocks[-1]
    bounds = (0,) + blocks
    sizes = [bounds[k] - bounds[k - 1] for k in range(1, len(bounds))]
    count = factorial(n) // prod(factorial(s) for s in sizes)
    limit = settings.GVM_WEYL_ENUMERATION_LIMIT if limit is None else limit
    if count > limit:
        raise PreconditionError(f"|W(Θ)| = {count} exceeds the enumeration limit {limit}")

    bar = gl_lambda_bar(blocks, values)
    parts = [bar[bounds[k - 1]:bounds[k]] for k in range(1, len(bounds))]
    orbit = _shuffles(parts, n)
    sets = [set(part) for part in parts]

    witnesses, set_witnesses = [], []
    for j in range(1, len(bounds)):
        moved = []
        for nu in range(bounds[j - 1] + 1, bounds[j]):
            swapped = list(bar)
            swapped[nu - 1], swapped[nu] = swapped[nu], swapped[nu - 1]
            if tuple(swapped) in orbit:
                moved.append((j, nu))
        partners = _set_condition(sets, j)
        if bool(moved) != bool(partners):
            raise GvmError(f"transposition test and set condition disagree on block {j}")
        witnesses.extend(moved)
        set_witnesses.extend((k, j) for k in partners)
    return GlnLinkage(blocks, bar, witnesses, set_witnesses)


# ============================================================================
# RECURSIONS
# ============================================================================

def _s(index: int) -> MultiPoly:
    return MultiPoly.variable(f"s{index}")


def _mu(index: int) -> MultiPoly:
    return MultiPoly.variable(f"mu{index}")


T = MultiPoly.variable('t')

_recursion_cache = LRUCache(maxsize=1024)


@cached(_recursion_cache, key=lambda k, ell: ('f', k, ell))
def recursion_f(k: int, ell: int) -> MultiPoly:
    """f(0,ℓ) = 1, f(k,ℓ) = f(k-1,ℓ)(μ_ℓ - μ_k) + Σ_{ν<ℓ} s_ν f(k-1,ν)."""
    if k == 0:
        return MultiPoly.constant(1)
    total = recursion_f(k - 1, ell) * (_mu(ell) - _mu(k))
    for nu in range(1, ell):
        total = total + _s(nu) * recursion_f(k - 1, nu)
    return total


@cached(_recursion_cache, key=lambda k, ell: ('g', k, ell))
def recursion_g(k: int, ell: int) -> MultiPoly:
    """g(1,ℓ) = 1, g(k,ℓ) = g(k-1,ℓ)(t - μ_k) + f(k-1,ℓ)."""
    if k == 1:
        return MultiPoly.constant(1)
    return recursion_g(k - 1, ell) * (T - _mu(k)) + recursion_f(k - 1, ell)


@dataclass
class RecursionForms:
    k: int
    ell: int
    f: MultiPoly
    g: Optional[MultiPoly]
    f_closed: Optional[MultiPoly]
    g_closed: Optional[MultiPoly]

    @property
    def f_residual(self) -> Optional[MultiPoly]:
        return None if self.f_closed is None else self.f - self.f_closed

    @property
    def g_residual(self) -> Optional[MultiPoly]:
        return None if self.g_closed is None else self.g - self.g_closed

    @property
    def exact(self) -> bool:
        return all(r is None or r.is_zero() for r in (self.f_residual, self.g_residual))


def recursion_closed_forms(k: int, ell: int) -> RecursionForms:
    """
    f(k,ℓ), g(k,ℓ) and their closed forms where they exist:

        f(k,ℓ) = 0 for k ≥ ℓ
        f(ℓ-1,ℓ) = ∏_{ν<ℓ} (μ_ℓ - μ_ν + s_ν)
        g(k,ℓ) = ∏_{ν<ℓ} (t - μ_ν + s_ν) ∏_{ℓ<ν≤k} (t - μ_ν) for k ≥ ℓ

    Raises:
        InputError: k < 0 or ℓ < 1
    """
    if k < 0 or ell < 1:
        raise InputError(f"need k ≥ 0 and ℓ ≥ 1, got k={k}, ℓ={ell}")
    f = recursion_f(k, ell)
    if k >= ell:
        f_closed = MultiPoly.constant(0)
    elif k == ell - 1:
        f_closed = MultiPoly.constant(1)
        for nu in range(1, ell):
            f_closed = f_closed * (_mu(ell) - _mu(nu) + _s(nu))
    else:
        f_closed = None
    g = recursion_g(k, ell) if k >= 1 else None
    g_closed = None
    if k >= 1 and k >= ell:
        g_closed = MultiPoly.constant(1)
        for nu in range(1, ell):
            g_closed = g_closed * (T - _mu(nu) + _s(nu))
        for nu in range(ell + 1, k + 1):
            g_closed = g_closed * (T - _mu(nu))
    return RecursionForms(k, ell, f, g, f_closed, g_closed)


def recursion_sweep(max_k: int) -> List[Tuple[int, int]]:
    """(k, ℓ) pairs up to max_k whose closed forms leave a nonzero residual."""
    return [
        (k, ell)
        for k in range(0, max_k + 1)
        for ell in range(1, max_k + 1)
        if not recursion_closed_forms(k, ell).exact
    ]
