"""
Exact Algebra Service - rational scalars, affine-linear forms and polynomials.

Every number the engine produces is an exact rational; this module holds the
small algebra the rest of the services are written against.

Features:
    - Rational parsing and "p/q" formatting
    - LinearForm: affine-linear functions of the λ-coordinates
    - FactoredPoly: monic polynomials in x kept as products of linear factors
    - LinearProduct: scalar times a product of linear forms (gap functions)
    - MultiPoly: sparse multivariate polynomials on sympy rings (expansion target, power sums)
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from cachetools import LRUCache, cached
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from gvm.exceptions import InputError, MissingVariableError

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial = Tuple[Tuple[str, int], ...]

X = 'x'


# ============================================================================
# RATIONALS
# ============================================================================

def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"not a rational number: {value!r}")


def parse_rational(text: str) -> Fraction:
    """
    Parse "p", "p/q" or a finite decimal into an exact Fraction.

    Raises:
        InputError: when the text is not a rational literal

    Example:
        >>> parse_rational("-3/6")
        Fraction(-1, 2)
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"malformed rational '{text}'")


def format_rational(value: Scalar) -> str:
    """Render as "p/q", omitting "/q" when q = 1."""
    return str(Fraction(value))


def default_variable_name(index: int) -> str:
    return f"lambda{index}"


# ============================================================================
# LINEAR FORMS
# ============================================================================

class LinearForm:
    """
    Affine-linear form c + Σ a_j λ_j with exact coefficients.

    Features:
        - Hashable and immutable; zero coefficients are never stored
        - Arithmetic with other forms and with scalars
        - Evaluation, substitution and primitive normalization
    """

    __slots__ = ('_constant', '_coeffs')

    def __init__(self, constant: Scalar = 0, coeffs: Optional[Mapping[int, Scalar]] = None):
        self._constant = to_rational(constant)
        items = ((int(j), to_rational(c)) for j, c in (coeffs or {}).items())
        self._coeffs: Tuple[Tuple[int, Fraction], ...] = tuple(
            sorted((j, c) for j, c in items if c != 0)
        )

    @classmethod
    def variable(cls, index: int, coeff: Scalar = 1) -> 'LinearForm':
        return cls(0, {index: coeff})

    @property
    def constant(self) -> Fraction:
        return self._constant

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def coefficient(self, index: int) -> Fraction:
        return dict(self._coeffs).get(index, Fraction(0))

    def variables(self) -> Tuple[int, ...]:
        return tuple(j for j, _ in self._coeffs)

    def is_zero(self) -> bool:
        return self._constant == 0 and not self._coeffs

    def is_constant(self) -> bool:
        return not self._coeffs

    def linear_part(self) -> 'LinearForm':
        return LinearForm(0, dict(self._coeffs))

    # ------------------------------------------------------------------ arithmetic

    def __add__(self, other) -> 'LinearForm':
        if isinstance(other, LinearForm):
            coeffs = dict(self._coeffs)
            for j, c in other._coeffs:
                coeffs[j] = coeffs.get(j, 0) + c
            return LinearForm(self._constant + other._constant, coeffs)
        return LinearForm(self._constant + to_rational(other), dict(self._coeffs))

    __radd__ = __add__

    def __neg__(self) -> 'LinearForm':
        return LinearForm(-self._constant, {j: -c for j, c in self._coeffs})

    def __sub__(self, other) -> 'LinearForm':
        return self + (-other)

    def __rsub__(self, other) -> 'LinearForm':
        return (-self) + other

    def __mul__(self, scalar) -> 'LinearForm':
        if isinstance(scalar, LinearForm):
            return NotImplemented
        s = to_rational(scalar)
        return LinearForm(self._constant * s, {j: c * s for j, c in self._coeffs})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> 'LinearForm':
        return self * (1 / to_rational(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self._constant == other._constant and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._constant, self._coeffs))

    # ------------------------------------------------------------------ evaluation

    def evaluate(self, assignment: Mapping[int, Scalar]) -> Fraction:
        """
        Value of the form at a λ-assignment.

        Raises:
            MissingVariableError: naming the first unassigned index
        """
        total = self._constant
        for j, c in self._coeffs:
            if j not in assignment:
                raise MissingVariableError(j)
            total += c * to_rational(assignment[j])
        return total

    def substitute(self, mapping: Mapping[int, 'LinearForm']) -> 'LinearForm':
        """Replace λ_j by mapping[j]; variables absent from the mapping are kept."""
        result = LinearForm(self._constant)
        for j, c in self._coeffs:
            if j in mapping:
                result = result + mapping[j] * c
            else:
                result = result + LinearForm.variable(j, c)
        return result

    def primitive(self) -> Tuple[Fraction, 'LinearForm']:
        """
        Split off a scalar so the remaining form has coprime integer
        coefficients and a positive leading λ-coefficient.

        Returns:
            (scale, form) with self == scale * form. A constant form c != 0
            gives (c, 1); the zero form gives (0, zero form).
        """
        if self.is_zero():
            return Fraction(0), LinearForm()
        if self.is_constant():
            return self._constant, LinearForm(1)
        values = [c for _, c in self._coeffs] + [self._constant]
        denominator = lcm(*(v.denominator for v in values))
        numerators = [int(v * denominator) for v in values]
        divisor = 0
        for n in numerators:
            divisor = gcd(divisor, n)
        if self._coeffs[0][1] < 0:
            divisor = -divisor
        scale = Fraction(divisor, denominator)
        return scale, self / scale

    def sort_key(self):
        """Display order for roots: constants first, then by decreasing coefficients."""
        return (tuple((j, -c) for j, c in self._coeffs), -self._constant)

    def to_multipoly(self, name: Callable[[int], str] = default_variable_name) -> 'MultiPoly':
        result = MultiPoly.constant(self._constant)
        for j, c in self._coeffs:
            result = result + MultiPoly.variable(name(j)) * c
        return result

    def __repr__(self) -> str:
        parts = [f"{format_rational(c)}*l{j}" for j, c in self._coeffs]
        if self._constant or not parts:
            parts.append(format_rational(self._constant))
        return f"LinearForm({' + '.join(parts)})"


def _root_sort_key(item: Tuple[LinearForm, int]):
    return item[0].sort_key()


def _factor_sort_key(item: Tuple[LinearForm, int]):
    form = item[0]
    return (tuple(form.coeffs.items()), form.constant)


# ============================================================================
# FACTORED POLYNOMIALS IN x
# ============================================================================

class FactoredPoly:
    """
    Monic polynomial ∏ (x - root)^mult with LinearForm roots.

    Features:
        - Equal roots are merged; factor order is canonical
        - Root reading at a numeric λ (eval_at)
        - Expansion to MultiPoly on demand
    """

    __slots__ = ('_factors',)

    def __init__(self, factors: Iterable[Tuple[LinearForm, int]] = ()):
        merged: Dict[LinearForm, int] = {}
        for root, mult in factors:
            if mult <= 0:
                raise ValueError(f"factor multiplicity must be positive, got {mult}")
            merged[root] = merged.get(root, 0) + mult
        self._factors: Tuple[Tuple[LinearForm, int], ...] = tuple(
            sorted(merged.items(), key=_root_sort_key)
        )

    @classmethod
    def from_roots(cls, roots: Iterable[LinearForm]) -> 'FactoredPoly':
        return cls((root, 1) for root in roots)

    @property
    def factors(self) -> Tuple[Tuple[LinearForm, int], ...]:
        return self._factors

    def roots(self) -> List[LinearForm]:
        return [root for root, _ in self._factors]

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self._factors)

    def is_squarefree(self) -> bool:
        return all(mult == 1 for _, mult in self._factors)

    def variables(self) -> Tuple[int, ...]:
        found = set()
        for root, _ in self._factors:
            found.update(root.variables())
        return tuple(sorted(found))

    def __mul__(self, other: 'FactoredPoly') -> 'FactoredPoly':
        return FactoredPoly(self._factors + other._factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredPoly):
            return NotImplemented
        return self._factors == other._factors

    def __hash__(self) -> int:
        return hash(self._factors)

    def eval_at(self, assignment: Mapping[int, Scalar]) -> List[Tuple[Fraction, int]]:
        """
        Root values at a λ-assignment, with multiplicities merged.

        Example:
            >>> p = FactoredPoly.from_roots([LinearForm.variable(1), LinearForm(1)])
            >>> p.eval_at({1: 1})
            [(Fraction(1, 1), 2)]
        """
        values: Dict[Fraction, int] = {}
        for root, mult in self._factors:
            value = root.evaluate(assignment)
            values[value] = values.get(value, 0) + mult
        return sorted(values.items())

    def evaluate(self, x: Scalar, assignment: Mapping[int, Scalar]) -> Fraction:
        total = Fraction(1)
        for root, mult in self._factors:
            total *= (to_rational(x) - root.evaluate(assignment)) ** mult
        return total

    def substitute(self, mapping: Mapping[int, LinearForm]) -> 'FactoredPoly':
        return FactoredPoly((root.substitute(mapping), mult) for root, mult in self._factors)

    def expand(self, name: Callable[[int], str] = default_variable_name) -> 'MultiPoly':
        result = MultiPoly.constant(1)
        x = MultiPoly.variable(X)
        for root, mult in self._factors:
            result = result * (x - root.to_multipoly(name)) ** mult
        return result

    def __repr__(self) -> str:
        return f"FactoredPoly({list(self._factors)!r})"


def expand(poly: FactoredPoly) -> 'MultiPoly':
    return poly.expand()


def eval_at(poly: FactoredPoly, assignment: Mapping[int, Scalar]) -> List[Tuple[Fraction, int]]:
    return poly.eval_at(assignment)


# ============================================================================
# PRODUCTS OF LINEAR FORMS (no x)
# ============================================================================

class LinearProduct:
    """
    scalar · ∏ form^mult, kept in canonical form.

    Each non-constant factor is primitive with a positive leading coefficient;
    constants are absorbed into the scalar. A zero factor collapses the whole
    product to scalar 0 with no factors.
    """

    __slots__ = ('_scalar', '_factors')

    def __init__(self, scalar: Scalar = 1, factors: Iterable[Tuple[LinearForm, int]] = ()):
        scale = to_rational(scalar)
        merged: Dict[LinearForm, int] = {}
        for form, mult in factors:
            if mult <= 0:
                raise ValueError(f"factor multiplicity must be positive, got {mult}")
            factor_scale, primitive = form.primitive()
            scale *= factor_scale ** mult
            if primitive.is_constant():
                continue
            merged[primitive] = merged.get(primitive, 0) + mult
        if scale == 0:
            merged = {}
        self._scalar = scale
        self._factors: Tuple[Tuple[LinearForm, int], ...] = tuple(
            sorted(merged.items(), key=_factor_sort_key)
        )

    @classmethod
    def from_forms(cls, forms: Iterable[LinearForm], scalar: Scalar = 1) -> 'LinearProduct':
        return cls(scalar, ((form, 1) for form in forms))

    @property
    def scalar(self) -> Fraction:
        return self._scalar

    @property
    def factors(self) -> Tuple[Tuple[LinearForm, int], ...]:
        return self._factors

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self._factors)

    def is_identically_zero(self) -> bool:
        return self._scalar == 0

    def evaluate(self, assignment: Mapping[int, Scalar]) -> Fraction:
        total = self._scalar
        for form, mult in self._factors:
            total *= form.evaluate(assignment) ** mult
        return total

    def substitute(self, mapping: Mapping[int, LinearForm]) -> 'LinearProduct':
        return LinearProduct(self._scalar, ((f.substitute(mapping), m) for f, m in self._factors))

    def __mul__(self, other: 'LinearProduct') -> 'LinearProduct':
        return LinearProduct(self._scalar * other._scalar, self._factors + other._factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearProduct):
            return NotImplemented
        return self._scalar == other._scalar and self._factors == other._factors

    def __hash__(self) -> int:
        return hash((self._scalar, self._factors))

    def expand(self, name: Callable[[int], str] = default_variable_name) -> 'MultiPoly':
        result = MultiPoly.constant(self._scalar)
        for form, mult in self._factors:
            result = result * form.to_multipoly(name) ** mult
        return result

    def __repr__(self) -> str:
        return f"LinearProduct({format_rational(self._scalar)}, {list(self._factors)!r})"



# ============================================================================
# SPARSE MULTIVARIATE POLYNOMIALS
# ============================================================================

@cached(LRUCache(maxsize=256))
def polynomial_ring(names: Tuple[str, ...]) -> PolyRing:
    """ℚ[names] with generators in the given (sorted) order."""
    return ring(",".join(names), QQ)[0]


def _to_qq(value: Scalar):
    value = to_rational(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class MultiPoly:
    """
    Polynomial over ℚ in named variables.

    Wraps a sparse sympy ring element. Operands living in different rings are
    lifted to the ring over the union of their variable names.
    """

    __slots__ = ('_element',)

    def __init__(self, element: PolyElement):
        self._element = element

    @classmethod
    def constant(cls, value: Scalar) -> 'MultiPoly':
        return cls(polynomial_ring(()).ground_new(_to_qq(value)))

    @classmethod
    def variable(cls, name: str) -> 'MultiPoly':
        return cls(polynomial_ring((name,)).gens[0])

    @property
    def names(self) -> Tuple[str, ...]:
        """Generators of the underlying ring, some possibly unused."""
        return tuple(str(symbol) for symbol in self._element.ring.symbols)

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        names = self.names
        return {
            tuple((name, exp) for name, exp in zip(names, monom) if exp): _from_qq(coeff)
            for monom, coeff in self._element.terms()
        }

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        key = tuple(sorted((n, e) for n, e in exponents.items() if e))
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._element

    def degree(self) -> int:
        return max((sum(monom) for monom in self._element.monoms()), default=0)

    def variables(self) -> Tuple[str, ...]:
        monoms = self._element.monoms()
        return tuple(name for i, name in enumerate(self.names) if any(m[i] for m in monoms))

    # ------------------------------------------------------------------ arithmetic

    @staticmethod
    def _coerce(other) -> 'MultiPoly':
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(other)

    def _unify(self, other) -> Tuple[PolyElement, PolyElement]:
        other = self._coerce(other)
        target = polynomial_ring(tuple(sorted(set(self.names) | set(other.names))))
        return self._element.set_ring(target), other._element.set_ring(target)

    def __add__(self, other) -> 'MultiPoly':
        a, b = self._unify(other)
        return MultiPoly(a + b)

    __radd__ = __add__

    def __neg__(self) -> 'MultiPoly':
        return MultiPoly(-self._element)

    def __sub__(self, other) -> 'MultiPoly':
        a, b = self._unify(other)
        return MultiPoly(a - b)

    def __rsub__(self, other) -> 'MultiPoly':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'MultiPoly':
        a, b = self._unify(other)
        return MultiPoly(a * b)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'MultiPoly':
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        return MultiPoly(self._element ** exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        return a == b

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """
        Raises:
            InputError: a variable that occurs in the polynomial has no value
        """
        for name in self.variables():
            if name not in assignment:
                raise InputError(f"no value assigned to {name}")
        element = self._element
        if not element.ring.ngens:
            return _from_qq(element.get((), QQ.zero))
        points = [(gen, _to_qq(assignment.get(name, 0))) for gen, name in zip(element.ring.gens, self.names)]
        return _from_qq(element.evaluate(points))

    def __repr__(self) -> str:
        return f"MultiPoly({self._element})"
