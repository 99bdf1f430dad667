"""
Minimal Polynomial Service - global minimal polynomials of generalized Verma modules.

Every polynomial here is built from the Levi lowest weights W̄_Θ(π) and the
shift D_π(ϖ) = ½⟨π̄-ϖ, π̄+ϖ-2ρ⟩ in the trace form of π.

Features:
    - Ω_{π,Θ} and q_{π,Θ}(x;λ) = ∏ (x - μ(λ) - C)
    - Numeric refinement: linkage classes, chain lengths κ and an annihilator
    - τ-symmetrized polynomial on the fixed slice of a diagram automorphism
    - Characteristic polynomial q_π(x) and the ρ-shift identity
    - Classical limit q̄, r̄ and ramified elements
    - Closed forms for multiplicity-free, adjoint and minuscule π
    - Power sums T^(k) and a Jacobian generation heuristic
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import sympy

from gvm.exceptions import GvmError, HypothesisError, InputError, NotAWeightError, PreconditionError
from gvm.services.branching import levi_lowest_weights
from gvm.services.conventions import PSI_PRIME, FundamentalParam, Parametrization
from gvm.services.exactalg import FactoredPoly, LinearForm, LinearProduct, MultiPoly, Scalar
from gvm.services.rootsys import (
    NormalizedForm, RootSystem, ThetaSubset, Vector, theta_subset, trace_form,
    vadd, vdot, vscale, vsub, vsum,
)
from gvm.services.weights import (
    WeightSystem, is_minuscule, levi_decompose_adjoint, levi_decompose_minuscule,
)

logger = logging.getLogger(__name__)

MINIMAL = 'minimal'
REFINED = 'refined'

MULTIPLICITY_FREE = 'multiplicity-free'
ADJOINT = 'adjoint'
MINUSCULE = 'minuscule'
SPECIAL_KINDS = (MULTIPLICITY_FREE, ADJOINT, MINUSCULE)


# ============================================================================
# SHIFT CONSTANTS
# ============================================================================

def d_shift(ws: WeightSystem, form: NormalizedForm, weight: Sequence) -> Fraction:
    """
    D_π(ϖ) = ½⟨π̄-ϖ, π̄+ϖ-2ρ⟩

    Raises:
        NotAWeightError: ϖ is not a weight of π

    Example:
        >>> G2 = build_root_system('G', 2)
        >>> ws = weight_system(G2, G2.fundamental_weights[0])
        >>> d_shift(ws, trace_form(G2, ws.highest), (-1, 1, 0))
        Fraction(2, 3)
    """
    weight = tuple(weight)
    if not ws.contains(weight):
        raise NotAWeightError(f"{tuple(map(str, weight))} is not a weight of {ws}")
    low = ws.lowest
    rho = ws.rs.rho
    return form.pair(vsub(low, weight), vsub(vadd(low, weight), vscale(2, rho))) / 2


def casimir_eigenvalue(form: NormalizedForm, mu: Sequence) -> Fraction:
    """⟨μ, μ+2ρ⟩, the Casimir eigenvalue on a highest weight module of weight μ."""
    return form.pair(tuple(mu), vadd(mu, vscale(2, form.rs.rho)))


# ============================================================================
# GLOBAL MINIMAL POLYNOMIAL
# ============================================================================

@dataclass(frozen=True)
class OmegaPair:
    """(μ, C) ∈ Ω_{π,Θ} with the lowest weights that produce it."""

    linear: LinearForm
    constant: Fraction
    weights: Tuple[Vector, ...]

    @property
    def root(self) -> LinearForm:
        return self.linear + self.constant


@dataclass
class MinPolyResult:
    ws: WeightSystem
    param: Parametrization
    form: NormalizedForm
    poly: FactoredPoly
    omega: List[OmegaPair]
    lowest: List[Tuple[Vector, int]]
    squarefree: bool
    generic_minimal: bool = True

    @property
    def ts(self) -> ThetaSubset:
        return self.param.ts

    @property
    def degree(self) -> int:
        return self.poly.degree


def _resolve(ws: WeightSystem, ts: Optional[ThetaSubset], form: Optional[NormalizedForm],
             param: Optional[Parametrization]) -> Tuple[Parametrization, NormalizedForm]:
    if param is None:
        if ts is None:
            raise InputError("a Θ subset or a parametrization is required")
        param = FundamentalParam(ts)
    if form is None:
        form = trace_form(ws.rs, ws.highest)
    return param, form


def omega_pairs(ws: WeightSystem, param: Parametrization, form: NormalizedForm,
                lowest: Sequence[Tuple[Vector, int]]) -> List[OmegaPair]:
    """Ω_{π,Θ} as a set: lowest weights with equal (μ, C) are merged."""
    pairs: Dict[Tuple[LinearForm, Fraction], List[Vector]] = {}
    for weight, _ in lowest:
        key = (form.linear(param.lambda_theta, weight), d_shift(ws, form, weight))
        pairs.setdefault(key, []).append(weight)
    omega = [OmegaPair(linear, constant, tuple(weights)) for (linear, constant), weights in pairs.items()]
    omega.sort(key=lambda pair: pair.root.sort_key())
    return omega


def global_min_poly(ws: WeightSystem, ts: Optional[ThetaSubset] = None,
                    form: Optional[NormalizedForm] = None,
                    param: Optional[Parametrization] = None) -> MinPolyResult:
    """
    The global minimal polynomial q_{π,Θ}(x;λ).

    Args:
        ws: weight system of π
        ts: Θ, when λ uses the fundamental coordinates of Ψ
        form: trace form of π (computed when omitted)
        param: any parametrization of a_Θ*; overrides `ts`

    Returns:
        MinPolyResult; the polynomial is always minimal for generic λ

    Example:
        >>> G2 = build_root_system('G', 2)
        >>> ws = weight_system(G2, G2.fundamental_weights[0])
        >>> global_min_poly(ws, theta_subset(G2, [1])).degree
        3
    """
    param, form = _resolve(ws, ts, form, param)
    branching = levi_lowest_weights(ws, param.ts)
    omega = omega_pairs(ws, param, form, branching.lowest)
    poly = FactoredPoly.from_roots(pair.root for pair in omega)
    squarefree = len(branching.lowest) == len(omega)
    logger.debug("q for %s, %s: degree %d, |W̄_Θ| = %d", ws, param, poly.degree, len(branching.lowest))
    return MinPolyResult(ws, param, form, poly, omega, list(branching.lowest), squarefree)


# ============================================================================
# NUMERIC REFINEMENT
# ============================================================================

@dataclass
class LinkageClass:
    value: Fraction
    weights: List[Vector]
    kappa: int


@dataclass
class MinPolyEvaluation:
    assignment: Dict[int, Fraction]
    roots: List[Tuple[Fraction, int]]
    verdict: str
    classes: List[LinkageClass] = field(default_factory=list)
    annihilator: List[Tuple[Fraction, int]] = field(default_factory=list)

    @property
    def is_minimal(self) -> bool:
        return self.verdict == MINIMAL


def longest_theta_chain(ts: ThetaSubset, weights: Sequence[Vector]) -> int:
    """Longest strictly increasing ≤_Θ chain among the restrictions of the weights."""
    representatives: Dict[Tuple[Fraction, ...], Vector] = {}
    for weight in weights:
        representatives.setdefault(ts.restriction_key(weight), weight)
    graph = nx.DiGraph()
    graph.add_nodes_from(representatives)
    for a, u in representatives.items():
        for b, v in representatives.items():
            if a != b and ts.leq(u, v):
                graph.add_edge(a, b)
    return nx.dag_longest_path_length(graph) + 1


def min_poly_at(result: MinPolyResult, assignment: Mapping[int, Scalar]) -> MinPolyEvaluation:
    """
    Specialize q_{π,Θ} at a rational λ.

    Distinct root values certify minimality. Otherwise W̄_Θ(π) is split into
    classes by W-dot linkage of λ_Θ - ϖ, each class gets the length κ of its
    longest ≤_Θ chain and the annihilator is ∏ (x - value)^κ.

    Raises:
        MissingVariableError: the assignment misses a variable
        GvmError: ⟨λ_Θ,ϖ⟩ + D_π(ϖ) is not constant on a linkage class
    """
    param, form, ws = result.param, result.form, result.ws
    rs = ws.rs
    values = param.check_assignment(assignment)
    roots = result.poly.eval_at(values)
    lam = param.at(values)
    verdict = MINIMAL if all(mult == 1 for _, mult in roots) else REFINED

    shifted_rho = vadd(lam, rs.rho)
    groups: Dict[tuple, List[Vector]] = {}
    for weight, _ in result.lowest:
        shifted = vsub(shifted_rho, weight)
        key = (form.norm(shifted), rs.dominant_conjugate(shifted)[0])
        groups.setdefault(key, []).append(weight)

    classes = []
    for weights in groups.values():
        found = {form.pair(lam, w) + d_shift(ws, form, w) for w in weights}
        if len(found) != 1:
            raise GvmError(f"linkage class of {len(weights)} weights carries values {sorted(found)}")
        classes.append(LinkageClass(found.pop(), weights, longest_theta_chain(param.ts, weights)))
    classes.sort(key=lambda c: c.value)

    exponents: Dict[Fraction, int] = {}
    for linkage in classes:
        exponents[linkage.value] = max(exponents.get(linkage.value, 0), linkage.kappa)
    return MinPolyEvaluation(values, roots, verdict, classes, sorted(exponents.items()))


def order_shift_violations(ws: WeightSystem, ts: ThetaSubset,
                           form: Optional[NormalizedForm] = None) -> List[Tuple[Vector, Vector]]:
    """
    Pairs (ϖ, ϖ′) breaking D_π(ϖ) < D_π(ϖ′) for ϖ < ϖ′ ∈ W̄_Θ(π) with equal restriction.

    An empty list confirms the order property of the shift.
    """
    form = form or trace_form(ws.rs, ws.highest)
    violations = []
    for upper, _ in levi_lowest_weights(ws, ts).lowest:
        key = ts.restriction_key(upper)
        for weight in ws.weights:
            if weight == upper or ts.restriction_key(weight) != key or not ws.leq(weight, upper):
                continue
            if d_shift(ws, form, weight) >= d_shift(ws, form, upper):
                violations.append((weight, upper))
    return violations


# ============================================================================
# DIAGRAM AUTOMORPHISMS
# ============================================================================

@dataclass
class TauSlice:
    """The τ-fixed subspace of a_Θ*: pivot variables expressed in the free ones."""

    tau: Dict[int, int]
    substitution: Dict[int, LinearForm]
    free: Tuple[int, ...]


def _engine_tau(param: Parametrization, tau: Mapping[int, int]) -> Dict[int, int]:
    tau = {int(i): int(j) for i, j in tau.items()}
    if param.convention != PSI_PRIME:
        return tau
    rs = param.rs
    return {rs.opposition(i): rs.opposition(j) for i, j in tau.items()}


def tau_fixed_slice(param: Parametrization, tau: Mapping[int, int]) -> TauSlice:
    """
    Solve ⟨λ_Θ, α_j^∨⟩ = ⟨λ_Θ, α_τ(j)^∨⟩ for the variables of the parametrization.

    Raises:
        InputError: τ is not a diagram automorphism
        PreconditionError: τ(Θ) ≠ Θ
    """
    rs = param.rs
    engine_tau = _engine_tau(param, tau)
    if not rs.is_diagram_automorphism(engine_tau):
        raise InputError(f"{dict(tau)} is not an automorphism of the {rs.label} diagram")
    theta = set(param.ts.theta)
    if {engine_tau[i] for i in theta} != theta:
        raise PreconditionError("τ does not preserve Θ")

    labels = {j: rs.pairing(param.lambda_theta, j) for j in rs.indices}
    columns = sorted(param.variables, reverse=True)
    rows = []
    for j in rs.indices:
        difference = labels[j] - labels[engine_tau[j]]
        if isinstance(difference, LinearForm) and not difference.is_zero():
            rows.append([sympy.Rational(str(difference.coefficient(v))) for v in columns])
    substitution: Dict[int, LinearForm] = {}
    pivots: Tuple[int, ...] = ()
    if rows:
        reduced, pivots = sympy.Matrix(rows).rref()
        for r, p in enumerate(pivots):
            solved = LinearForm()
            for c, v in enumerate(columns):
                if c != p and reduced[r, c] != 0:
                    solved = solved - LinearForm.variable(v, Fraction(int(reduced[r, c].p), int(reduced[r, c].q)))
            substitution[columns[p]] = solved
    free = tuple(sorted(v for v in param.variables if v not in substitution))
    return TauSlice(dict(tau), substitution, free)


def tau_min_poly(ws: WeightSystem, ts: Optional[ThetaSubset], tau: Mapping[int, int],
                 form: Optional[NormalizedForm] = None,
                 param: Optional[Parametrization] = None) -> FactoredPoly:
    """
    q_{π,Θ,τ}: one factor per distinct (ϖ|_{(a_Θ)^τ}, D_π(ϖ)).

    Example:
        >>> A3 = build_root_system('A', 3)
        >>> ws = weight_system(A3, A3.fundamental_weights[0])
        >>> tau_min_poly(ws, theta_subset(A3, []), {1: 3, 2: 2, 3: 1}).degree
        4
    """
    param, form = _resolve(ws, ts, form, param)
    fixed = tau_fixed_slice(param, tau)
    result = global_min_poly(ws, form=form, param=param)
    roots = {pair.root.substitute(fixed.substitution) for pair in result.omega}
    return FactoredPoly.from_roots(roots)


# ============================================================================
# CHARACTERISTIC POLYNOMIAL
# ============================================================================

@dataclass(frozen=True)
class CharPolyFactor:
    weight: Vector
    constant: Fraction

    def root(self) -> LinearForm:
        """ϖ + constant as a form in the ε-coordinates of the Cartan variable."""
        return LinearForm(self.constant, {i + 1: c for i, c in enumerate(self.weight)})


def char_poly(ws: WeightSystem, form: Optional[NormalizedForm] = None) -> List[CharPolyFactor]:
    """
    q_π(x) = ∏ (x - ϖ - (⟨π,π+2ρ⟩ - ⟨ϖ,ϖ⟩)/2), one factor per distinct weight.

    Example:
        >>> C3 = build_root_system('C', 3)
        >>> ws = weight_system(C3, C3.fundamental_weights[0])
        >>> {f.constant for f in char_poly(ws)}
        {Fraction(3, 2)}
    """
    form = form or trace_form(ws.rs, ws.highest)
    top = casimir_eigenvalue(form, ws.highest)
    return [CharPolyFactor(w, (top - form.norm(w)) / 2) for w in ws.weights]


def char_poly_factored(ws: WeightSystem, form: Optional[NormalizedForm] = None) -> FactoredPoly:
    return FactoredPoly.from_roots(factor.root() for factor in char_poly(ws, form))


def rho_shift_identity(ws: WeightSystem, form: Optional[NormalizedForm] = None) -> bool:
    """
    Check that char_poly at μ = λ+ρ reproduces q_{π,∅}(x;λ) factor by factor.
    """
    form = form or trace_form(ws.rs, ws.highest)
    param = FundamentalParam(theta_subset(ws.rs, []))
    shifted = vadd(param.lambda_theta, ws.rs.rho)
    for factor in char_poly(ws, form):
        from_char = form.linear(shifted, factor.weight) + factor.constant
        from_min = form.linear(param.lambda_theta, factor.weight) + d_shift(ws, form, factor.weight)
        if from_char != from_min:
            logger.warning("ρ-shift identity fails at %s", factor.weight)
            return False
    return True


# ============================================================================
# CLASSICAL LIMIT
# ============================================================================

@dataclass
class ClassicalLimit:
    qbar: FactoredPoly
    rbar: LinearProduct
    ramified: List[Tuple[LinearForm, List[OmegaPair]]]


def classical_limit(ws: WeightSystem, ts: Optional[ThetaSubset] = None,
                    form: Optional[NormalizedForm] = None,
                    param: Optional[Parametrization] = None) -> ClassicalLimit:
    """
    q̄ = ∏_{μ∈Ω̄} (x - μ(λ)) and r̄ = ∏_{μ≠μ′} (μ - μ′).

    An element μ ∈ Ω̄ is ramified when more than one pair of Ω lies over it.
    """
    result = global_min_poly(ws, ts, form, param)
    fibers: Dict[LinearForm, List[OmegaPair]] = {}
    for pair in result.omega:
        fibers.setdefault(pair.linear, []).append(pair)
    linears = sorted(fibers, key=lambda form_: form_.sort_key())
    qbar = FactoredPoly.from_roots(linears)
    rbar = LinearProduct.from_forms(a - b for a in linears for b in linears if a != b)
    ramified = [(linear, fibers[linear]) for linear in linears if len(fibers[linear]) > 1]
    return ClassicalLimit(qbar, rbar, ramified)


# ============================================================================
# CLOSED FORMS
# ============================================================================

def _multiplicity_free_roots(ws: WeightSystem, param: Parametrization, form: NormalizedForm) -> List[LinearForm]:
    rs, ts = ws.rs, param.ts
    classes: Dict[Tuple[Fraction, ...], Vector] = {}
    for weight in ws.weights:
        key = ts.restriction_key(weight)
        if key not in classes or rs.height(weight) < rs.height(classes[key]):
            classes[key] = weight
    low = ws.lowest
    shifted = vadd(param.lambda_theta, rs.rho)
    return [
        form.linear(shifted, bottom) - form.pair(low, rs.rho) + (form.norm(low) - form.norm(bottom)) / 2
        for bottom in classes.values()
    ]


def _adjoint_roots(ws: WeightSystem, param: Parametrization, form: NormalizedForm) -> List[LinearForm]:
    rs, ts = ws.rs, param.ts
    shifted = vadd(param.lambda_theta, rs.rho)
    roots = [LinearForm(Fraction(1, 2))]
    for component in ts.components:
        top = ts.component_positive_roots(component)[-1]
        rho_component = vscale(Fraction(1, 2), vsum(ts.component_positive_roots(component), rs.dim))
        killing = form.pair(top, vadd(top, vscale(2, rho_component)))
        roots.append(LinearForm((1 - killing) / 2))
    for component in levi_decompose_adjoint(rs, ts):
        if component.kind != 'graded':
            continue
        alpha = component.lowest
        roots.append(form.linear(shifted, alpha) + (1 - form.norm(alpha)) / 2)
    return roots


def _minuscule_roots(ws: WeightSystem, param: Parametrization, form: NormalizedForm) -> List[LinearForm]:
    rs, ts = ws.rs, param.ts
    base = vadd(param.lambda_theta, vsub(ts.rho_theta, ts.rho_levi))
    words = rs.orbit(ws.highest)
    roots = []
    for highest in levi_decompose_minuscule(ws, ts):
        inverse = tuple(reversed(words[highest]))
        roots.append(form.linear(vadd(rs.act(inverse, base), rs.rho), ws.highest))
    return roots


def check_special_kind(ws: WeightSystem, ts: ThetaSubset, kind: str) -> None:
    """
    Raises:
        InputError: unknown kind
        HypothesisError: π does not have the requested kind
    """
    if kind not in SPECIAL_KINDS:
        raise InputError(f"unknown kind '{kind}'; expected one of {', '.join(SPECIAL_KINDS)}")
    if kind == MULTIPLICITY_FREE and not ws.is_multiplicity_free():
        raise HypothesisError(f"{ws} is not multiplicity free")
    if kind == ADJOINT:
        if not ws.is_adjoint():
            raise HypothesisError(f"{ws} is not the adjoint representation")
        if not ts.theta:
            raise HypothesisError("the adjoint closed form needs Θ ≠ ∅")
    if kind == MINUSCULE and not is_minuscule(ws):
        raise HypothesisError(f"{ws} is not minuscule")


def specialized_min_poly(ws: WeightSystem, ts: Optional[ThetaSubset], form: Optional[NormalizedForm],
                         kind: str, param: Optional[Parametrization] = None) -> FactoredPoly:
    """
    Closed-form q_{π,Θ} for multiplicity-free, adjoint and minuscule π.

    The result must agree with global_min_poly; the closed forms never go
    through D_π directly.
    """
    param, form = _resolve(ws, ts, form, param)
    check_special_kind(ws, param.ts, kind)
    if kind == MULTIPLICITY_FREE:
        roots = _multiplicity_free_roots(ws, param, form)
    elif kind == ADJOINT:
        roots = _adjoint_roots(ws, param, form)
    else:
        roots = _minuscule_roots(ws, param, form)
    return FactoredPoly.from_roots(set(roots))


# ============================================================================
# POWER SUMS
# ============================================================================

def _eps_variable(index: int) -> str:
    return f"e{index}"


def weight_as_poly(weight: Sequence) -> MultiPoly:
    result = MultiPoly.constant(0)
    for i, c in enumerate(weight, start=1):
        if c:
            result = result + MultiPoly.variable(_eps_variable(i)) * c
    return result


def power_sums(ws: WeightSystem, k: int) -> MultiPoly:
    """
    T^(k) = Σ m_π(ϖ) ϖ^k as a polynomial in the ε-coordinates e1, e2, ...

    Raises:
        InputError: k < 0
    """
    if k < 0:
        raise InputError(f"power sum degree must be non-negative, got {k}")
    total = MultiPoly.constant(0)
    for weight, mult in ws.multiplicities.items():
        total = total + weight_as_poly(weight) ** k * mult
    return total


def fundamental_degrees(rs: RootSystem) -> Tuple[int, ...]:
    r = rs.n
    if rs.family == 'gl':
        return tuple(range(1, r + 1))
    if rs.family == 'A':
        return tuple(range(2, r + 2))
    if rs.family in ('B', 'C'):
        return tuple(range(2, 2 * r + 1, 2))
    if rs.family == 'D':
        return tuple(sorted(list(range(2, 2 * r - 1, 2)) + [r]))
    return {
        ('E', 6): (2, 5, 6, 8, 9, 12),
        ('E', 7): (2, 6, 8, 10, 12, 14, 18),
        ('E', 8): (2, 8, 12, 14, 18, 20, 24, 30),
        ('F', 4): (2, 6, 8, 12),
        ('G', 2): (2, 6),
    }[(rs.family, rs.rank)]


@dataclass
class GenerationHeuristic:
    degrees: Tuple[int, ...]
    rank: int
    expected: int
    heuristic: bool = True

    @property
    def independent(self) -> bool:
        return self.rank == self.expected


def power_sum_generation(ws: WeightSystem, degrees: Optional[Sequence[int]] = None,
                         trials: int = 3, seed: int = 0) -> GenerationHeuristic:
    """
    Jacobian rank of (T^(d))_d on the Cartan subalgebra at random rational points.

    Full rank proves the power sums algebraically independent; a lower rank
    only says that no sampled point showed independence.
    """
    rs = ws.rs
    degrees = tuple(degrees) if degrees is not None else fundamental_degrees(rs)
    basis = list(rs.simple_roots) + ([rs.center] if rs.center else [])
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        point = [Fraction(0)] * rs.dim
        for vector in basis:
            t = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            point = [p + t * v for p, v in zip(point, vector)]
        rows = []
        for d in degrees:
            row = []
            for vector in basis:
                total = Fraction(0)
                for weight, mult in ws.multiplicities.items():
                    total += mult * d * vdot(weight, point) ** (d - 1) * vdot(weight, vector)
                row.append(sympy.Rational(total.numerator, total.denominator))
            rows.append(row)
        best = max(best, sympy.Matrix(rows).rank())
        if best == len(degrees):
            break
    return GenerationHeuristic(degrees, best, min(len(degrees), len(basis)))
