"""
Conventions Service - parametrizations of λ ∈ a_Θ* and the Ψ′ adapter.

The engine always computes with the fixed fundamental system Ψ. Worked
tables are often stated for Ψ′ = -Ψ instead; the adapter moves such data to
Ψ with the longest element w₀, which maps Ψ′ onto Ψ and is an isometry, so
every minimal polynomial and gap function is unchanged.

Features:
    - FundamentalParam: λ_Θ = Σ_{j∉Θ} λ_j Λ_j (plus the trace variable on gl_n)
    - PsiPrimeParam: Θ′ ⊂ Ψ′ and λ_Θ = Σ_{i∉Θ′} λ_i ϖ_i read through w₀
    - BlockParam: block sequences n₀ < n₁ < ... < n_L for gl_n, B_n, C_n, D_n,
      including the Θ̄ = Θ ∪ {α′_n} variant and the λ̄ coordinates
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from gvm.exceptions import InputError, PreconditionError
from gvm.services.exactalg import LinearForm, Scalar, to_rational
from gvm.services.rootsys import RootSystem, ThetaSubset, Vector, theta_subset, unit, vscale

logger = logging.getLogger(__name__)

PSI = 'psi'
PSI_PRIME = 'psi-prime'
CONVENTIONS = (PSI, PSI_PRIME)

SymbolicVector = Tuple[LinearForm, ...]


# ============================================================================
# SYMBOLIC VECTORS
# ============================================================================

def symbolic_vector(dim: int, terms: Sequence[Tuple[LinearForm, Sequence]]) -> SymbolicVector:
    """Σ coefficient · vector with LinearForm coefficients."""
    entries = [LinearForm() for _ in range(dim)]
    for coefficient, vector in terms:
        for position, value in enumerate(vector):
            if value:
                entries[position] = entries[position] + coefficient * value
    return tuple(entries)


def evaluate_vector(vector: Sequence[LinearForm], assignment: Mapping[int, Scalar]) -> Vector:
    return tuple(entry.evaluate(assignment) for entry in vector)


def longest_element_matrix(rs: RootSystem) -> List[Vector]:
    """Images w₀(ε_ν) of the ε-basis, as rows."""
    return [rs.longest_element_action(unit(rs.dim, position)) for position in range(1, rs.dim + 1)]


def apply_longest_element(rs: RootSystem, vector: Sequence) -> tuple:
    """w₀ applied to a (possibly symbolic) ε-vector."""
    rows = longest_element_matrix(rs)
    entries = [LinearForm() for _ in range(rs.dim)]
    for value, image in zip(vector, rows):
        for position, c in enumerate(image):
            if c:
                entries[position] = entries[position] + value * c
    if all(entry.is_constant() for entry in entries):
        return tuple(entry.constant for entry in entries)
    return tuple(entries)


# ============================================================================
# PARAMETRIZATIONS
# ============================================================================

class Parametrization:
    """
    A coordinate system on a_Θ*.

    Subclasses fix the engine ThetaSubset `ts`, the variable keys and the
    symbolic λ_Θ (engine ε-coordinates, one LinearForm per coordinate).
    """

    convention = PSI

    def __init__(self, ts: ThetaSubset, variables: Sequence[int], lambda_theta: SymbolicVector):
        self.rs = ts.rs
        self.ts = ts
        self.variables: Tuple[int, ...] = tuple(variables)
        self.lambda_theta: SymbolicVector = lambda_theta

    # ------------------------------------------------------------------ display

    @property
    def stated_theta(self) -> Tuple[int, ...]:
        """Θ in the convention the caller used."""
        return self.ts.theta

    def to_engine(self, weight: Sequence) -> Vector:
        return tuple(weight)

    def from_engine(self, weight: Sequence) -> Vector:
        return tuple(weight)

    def stated_index(self, index: int) -> int:
        """Simple-root index in the caller's convention."""
        return index

    # ------------------------------------------------------------------ assignments

    def check_assignment(self, assignment: Mapping[int, Scalar]) -> Dict[int, Fraction]:
        """
        Raises:
            InputError: unknown variable keys
        """
        unknown = sorted(set(assignment) - set(self.variables))
        if unknown:
            raise InputError(f"unknown lambda variable(s) {unknown}; expected {list(self.variables)}")
        return {j: to_rational(v) for j, v in assignment.items()}

    def positional(self, values: Sequence[Scalar]) -> Dict[int, Fraction]:
        if len(values) != len(self.variables):
            raise InputError(f"expected {len(self.variables)} lambda value(s), got {len(values)}")
        return {j: to_rational(v) for j, v in zip(self.variables, values)}

    def at(self, assignment: Mapping[int, Scalar]) -> Vector:
        """Numeric λ_Θ in engine coordinates."""
        return evaluate_vector(self.lambda_theta, self.check_assignment(assignment))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.rs.label}, Θ={list(self.stated_theta)})"


class FundamentalParam(Parametrization):
    """
    λ_Θ = Σ_{j∉Θ} λ_j Λ_j with Λ_j the fundamental weights of Ψ.

    On gl_n the extra variable n carries the trace: λ_n · (ε₁+...+ε_n)/n.
    """

    def __init__(self, ts: ThetaSubset):
        rs = ts.rs
        terms = [(LinearForm.variable(j), rs.fundamental_weights[j - 1]) for j in ts.complement]
        variables = list(ts.complement)
        if rs.center:
            terms.append((LinearForm.variable(rs.dim), vscale(Fraction(1, rs.dim), rs.center)))
            variables.append(rs.dim)
        super().__init__(ts, variables, symbolic_vector(rs.dim, terms))


class PsiPrimeParam(Parametrization):
    """
    Data stated for Ψ′ = -Ψ.

    Θ′ ⊂ Ψ′ is given by indices of α′_i = -α_i and λ_Θ′ = Σ_{i∉Θ′} λ_i ϖ_i with
    the fundamental weights ϖ_i of Ψ. Applying w₀ gives the engine data
    Θ = {τ(i) : i ∈ Θ′} and λ_Θ = -Σ λ_i Λ_{τ(i)}, τ the opposition involution.
    Variables keep their Ψ′ index.

    Example:
        >>> E6 = build_root_system('E', 6)
        >>> PsiPrimeParam(E6, [2, 3, 4, 5, 6]).ts.theta
        (1, 2, 3, 4, 5)
    """

    convention = PSI_PRIME

    def __init__(self, rs: RootSystem, theta_prime: Sequence[int]):
        theta_prime = tuple(sorted(set(int(i) for i in theta_prime)))
        for i in theta_prime:
            if i not in rs.indices:
                raise InputError(f"simple root index {i} out of range 1..{rs.rank}")
        ts = theta_subset(rs, [rs.opposition(i) for i in theta_prime])
        self.theta_prime = theta_prime
        complement = tuple(i for i in rs.indices if i not in theta_prime)
        terms = [(LinearForm.variable(i, -1), rs.fundamental_weights[rs.opposition(i) - 1]) for i in complement]
        variables = list(complement)
        if rs.center:
            terms.append((LinearForm.variable(rs.dim), vscale(Fraction(1, rs.dim), rs.center)))
            variables.append(rs.dim)
        super().__init__(ts, variables, symbolic_vector(rs.dim, terms))

    @property
    def stated_theta(self) -> Tuple[int, ...]:
        return self.theta_prime

    def to_engine(self, weight: Sequence) -> Vector:
        return apply_longest_element(self.rs, weight)

    def from_engine(self, weight: Sequence) -> Vector:
        return apply_longest_element(self.rs, weight)

    def stated_index(self, index: int) -> int:
        return self.rs.opposition(index)


class BlockParam(Parametrization):
    """
    Block-sequence coordinates for gl_n, B_n, C_n and D_n (stated for Ψ′).

    For n₀ = 0 < n₁ < ... < n_L = n the subset is
    Θ = {α′_ν : n_{k-1} < ν < n_k} and λ_Θ = Σ_k λ_k (ε_{n_{k-1}+1} + ... + ε_{n_k}).
    With `bar` the subset grows to Θ̄ = Θ ∪ {α′_n}, which forces λ_L = 0.

    Features:
        - Engine data through w₀ (Θ = τ(Θ′), λ_Θ = w₀ λ_Θ′)
        - λ̄_ν coordinates: λ̄ = ρ′ + λ_Θ′ with ρ′ = -ρ
        - Block lookups used by the closed-form tables
    """

    convention = PSI_PRIME
    FAMILIES = ('gl', 'B', 'C', 'D')

    def __init__(self, rs: RootSystem, blocks: Sequence[int], bar: bool = False):
        if rs.family not in self.FAMILIES:
            raise InputError(f"block sequences are defined for gl, B, C and D, not {rs.label}")
        n = rs.n
        blocks = tuple(int(b) for b in blocks)
        if not blocks or blocks[-1] != n:
            raise InputError(f"the block sequence must end with n = {n}")
        if any(b <= a for a, b in zip((0,) + blocks, blocks)):
            raise InputError(f"block sequence {list(blocks)} is not strictly increasing from 0")
        if bar and rs.family == 'gl':
            raise InputError("the Θ̄ variant exists only for B, C and D")
        if bar and rs.family == 'D' and n - (blocks[-2] if len(blocks) > 1 else 0) < 2:
            raise PreconditionError("Θ̄ for D_n needs α′_{n-1} ∈ Θ, i.e. a last block longer than one")
        self.rs = rs
        self.n = n
        self.blocks = blocks
        self.bar = bar
        self.length = len(blocks)

        theta_prime = self._inner_indices()
        if bar:
            theta_prime.append(n)
        self.theta_prime = tuple(sorted(theta_prime))
        ts = theta_subset(rs, [rs.opposition(i) for i in self.theta_prime])

        self.block_count = self.length - 1 if bar else self.length
        variables = tuple(range(1, self.block_count + 1))
        stated = symbolic_vector(rs.dim, [
            (LinearForm.variable(k), self.block_vector(k)) for k in variables
        ])
        self.stated_lambda = stated
        super().__init__(ts, variables, apply_longest_element(rs, stated) if variables else
                         tuple(LinearForm() for _ in range(rs.dim)))

    def _inner_indices(self) -> List[int]:
        bounds = (0,) + self.blocks
        return [nu for k in range(1, self.length + 1) for nu in range(bounds[k - 1] + 1, bounds[k])]

    @property
    def stated_theta(self) -> Tuple[int, ...]:
        return self.theta_prime

    def bound(self, k: int) -> int:
        """n_k, with n_0 = 0."""
        return 0 if k == 0 else self.blocks[k - 1]

    def block_of(self, nu: int) -> int:
        """The k with n_{k-1} < ν ≤ n_k."""
        for k in range(1, self.length + 1):
            if self.bound(k - 1) < nu <= self.bound(k):
                return k
        raise InputError(f"index {nu} lies outside 1..{self.n}")

    def block_vector(self, k: int) -> Vector:
        entries = [Fraction(0)] * self.rs.dim
        for nu in range(self.bound(k - 1) + 1, self.bound(k) + 1):
            entries[nu - 1] = Fraction(1)
        return tuple(entries)

    def lambda_bar(self) -> Dict[int, LinearForm]:
        """λ̄_ν for ν = 1..n as LinearForms in λ_1..λ_L."""
        rho = self.rs.rho
        values = {}
        for nu in range(1, self.n + 1):
            k = self.block_of(nu)
            value = LinearForm(-rho[nu - 1])
            if k in self.variables:
                value = value + LinearForm.variable(k)
            values[nu] = value
        return values

    def to_engine(self, weight: Sequence) -> Vector:
        return apply_longest_element(self.rs, weight)

    def from_engine(self, weight: Sequence) -> Vector:
        return apply_longest_element(self.rs, weight)

    def stated_index(self, index: int) -> int:
        return self.rs.opposition(index)

    def __repr__(self) -> str:
        suffix = ", bar" if self.bar else ""
        return f"BlockParam({self.rs.label}, blocks={list(self.blocks)}{suffix})"


def make_parametrization(rs: RootSystem, theta: Optional[Sequence[int]] = None,
                         convention: str = PSI, blocks: Optional[Sequence[int]] = None,
                         bar: bool = False) -> Parametrization:
    """
    Build the parametrization the CLI flags describe.

    Raises:
        InputError: conflicting or missing flags
    """
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention '{convention}'; expected one of {', '.join(CONVENTIONS)}")
    if blocks is not None:
        if theta is not None:
            raise InputError("--theta and --blocks are mutually exclusive")
        return BlockParam(rs, blocks, bar=bar)
    if bar:
        raise InputError("--bar needs --blocks")
    if theta is None:
        raise InputError("either --theta or --blocks is required")
    if convention == PSI_PRIME:
        return PsiPrimeParam(rs, theta)
    return FundamentalParam(theta_subset(rs, theta))
