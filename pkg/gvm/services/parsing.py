"""
Parsing Service - grammars for command-line values and LaTeX golden tables.

Features:
    - Type labels ("E6", "gl4") and rationals ("-3/2")
    - Weights "fund:1,0,2" / "eps:1/2,-1/2,0"
    - Index lists, block sequences, λ assignments (positional or j=v), τ maps
    - LaTeX factored polynomials and products of linear forms
    - Golden files: "% key: value" headers followed by one LaTeX body line
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import pyparsing as pp

from gvm.exceptions import InputError
from gvm.services.exactalg import FactoredPoly, LinearForm, LinearProduct

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()


# ============================================================================
# PRIMITIVES
# ============================================================================

NATURAL = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0])).set_name("index")
RATIONAL = pp.Regex(r"[+-]?\d+(?:/\d+|\.\d+)?").set_name("rational")


def _to_fraction(tokens):
    try:
        return Fraction(tokens[0])
    except ZeroDivisionError:
        raise pp.ParseFatalException(f"zero denominator in '{tokens[0]}'")


RATIONAL.set_parse_action(_to_fraction)

FAMILY = pp.one_of("gl A B C D E F G", caseless=False)
TYPE_LABEL = FAMILY("family") + NATURAL("rank")

RATIONAL_LIST = pp.DelimitedList(RATIONAL)
INDEX_LIST = pp.DelimitedList(NATURAL)

WEIGHT = pp.one_of("fund eps")("kind") + pp.Suppress(":") + pp.Group(RATIONAL_LIST)("coords")

ASSIGNMENT_ITEM = pp.Group(NATURAL + pp.Suppress("=") + RATIONAL)
NAMED_ASSIGNMENT = pp.DelimitedList(ASSIGNMENT_ITEM)

TAU_ITEM = pp.Group(NATURAL + pp.Suppress(":") + NATURAL)
TAU_MAP = pp.DelimitedList(TAU_ITEM)


def _parse(grammar: pp.ParserElement, text: str, what: str):
    try:
        return grammar.parse_string(text.strip(), parse_all=True)
    except (pp.ParseException, pp.ParseFatalException) as exc:
        raise InputError(f"malformed {what} '{text}': {exc.msg}")


def parse_type_label(label: str) -> Tuple[str, int]:
    """
    Example:
        >>> parse_type_label("gl4")
        ('gl', 4)
    """
    result = _parse(TYPE_LABEL, label, "type label")
    return result["family"], result["rank"]


def parse_rational_value(text: str) -> Fraction:
    return _parse(RATIONAL, text, "rational")[0]


def parse_weight(text: str) -> Tuple[str, List[Fraction]]:
    """("fund" | "eps", coordinates)."""
    result = _parse(WEIGHT, text, "weight")
    return result["kind"], list(result["coords"])


def parse_indices(text: str) -> Tuple[int, ...]:
    """Comma-separated simple-root indices; "" or "none" is the empty set."""
    if text.strip().lower() in ("", "none", "empty"):
        return ()
    return tuple(_parse(INDEX_LIST, text, "index list"))


def parse_blocks(text: str) -> Tuple[int, ...]:
    blocks = tuple(_parse(INDEX_LIST, text, "block sequence"))
    if any(b <= a for a, b in zip((0,) + blocks, blocks)):
        raise InputError(f"block sequence '{text}' is not strictly increasing from 0")
    return blocks


def parse_assignment(text: str) -> Union[List[Fraction], Dict[int, Fraction]]:
    """
    Either positional values "1,0,-1/2" or keyed values "2=1,5=-1/2".

    Returns:
        a list for positional input, a dict keyed by variable index otherwise
    """
    text = text.strip()
    if not text:
        return []
    if "=" in text:
        return {j: v for j, v in _parse(NAMED_ASSIGNMENT, text, "lambda assignment")}
    return list(_parse(RATIONAL_LIST, text, "lambda assignment"))


def parse_tau(text: str) -> Dict[int, int]:
    """A diagram automorphism as "i:j" pairs; unnamed indices are fixed."""
    if text.strip().lower() in ("", "id", "identity"):
        return {}
    return {i: j for i, j in _parse(TAU_MAP, text, "diagram automorphism")}


# ============================================================================
# LaTeX FACTORED FORMS
# ============================================================================

LBRACE, RBRACE = pp.Suppress("{"), pp.Suppress("}")

FRAC = pp.Suppress("\\frac") + LBRACE + NATURAL + RBRACE + LBRACE + NATURAL + RBRACE
FRAC.set_parse_action(lambda t: Fraction(t[0], t[1]))
COEFFICIENT = FRAC | NATURAL.copy().set_parse_action(lambda t: Fraction(int(t[0])))

SUBSCRIPT = pp.Suppress("_") + (LBRACE + NATURAL + RBRACE | pp.Regex(r"\d").set_parse_action(lambda t: int(t[0])))
LAMBDA = pp.Suppress("\\lambda") + pp.Opt(SUBSCRIPT, default=0)
X = pp.Literal("x").set_parse_action(lambda: -1)

SIGN = pp.one_of("+ -")
VARIABLE = X | LAMBDA
TERM = pp.Group(pp.Opt(SIGN, default="+")("sign")
                + (COEFFICIENT("coeff") + pp.Opt(VARIABLE("var")) | VARIABLE("var")))
AFFINE = pp.OneOrMore(TERM)

EXPONENT = pp.Suppress("^") + (LBRACE + NATURAL + RBRACE | pp.Regex(r"\d").set_parse_action(lambda t: int(t[0])))
FACTOR = pp.Group(pp.Suppress("(") + pp.Group(AFFINE)("terms") + pp.Suppress(")")
                  + pp.Opt(EXPONENT, default=1)("power"))
LEADING = pp.Opt(SIGN("sign")) + pp.Opt(COEFFICIENT("scalar"))
PRODUCT = LEADING + pp.Group(pp.ZeroOrMore(FACTOR))("factors")


def _affine(terms, default_index: Optional[int]) -> Tuple[Fraction, LinearForm]:
    """(coefficient of x, remaining LinearForm)."""
    x_coeff = Fraction(0)
    form = LinearForm()
    for term in terms:
        coeff, var = term.get("coeff"), term.get("var")
        value = Fraction(1) if coeff is None else coeff
        if term["sign"] == "-":
            value = -value
        if var is None:
            form = form + value
        elif var == -1:
            x_coeff += value
        else:
            index = var or default_index
            if not index:
                raise InputError("\\lambda without subscript needs a single-variable context")
            form = form + LinearForm.variable(index, value)
    return x_coeff, form


def _strip(text: str) -> str:
    cleaned = text.replace("\\Bigl", "").replace("\\Bigr", "").replace("\\left", "").replace("\\right", "")
    return " ".join(cleaned.replace("\\cdot", " ").split())


def parse_latex_product(text: str, default_index: Optional[int] = None) -> LinearProduct:
    """
    A scalar times a product of affine-linear factors in λ.

    Example:
        >>> parse_latex_product(r"\\frac{1}{6}(\\lambda_2 + 1)(3\\lambda_2 + 4)").scalar
        Fraction(1, 6)
    """
    result = _parse(PRODUCT, _strip(text), "LaTeX product")
    scalar = result.get("scalar", Fraction(1))
    if result.get("sign") == "-":
        scalar = -scalar
    forms = []
    for factor in result["factors"]:
        x_coeff, form = _affine(factor["terms"], default_index)
        if x_coeff:
            raise InputError("a product of linear forms cannot contain x")
        forms.extend([form] * factor["power"])
    return LinearProduct.from_forms(forms, scalar)


def parse_latex_poly(text: str, default_index: Optional[int] = None) -> FactoredPoly:
    """
    A monic product of factors (x - root).

    Raises:
        InputError: a factor is not monic in x
    """
    result = _parse(PRODUCT, _strip(text), "LaTeX polynomial")
    if "scalar" in result or result.get("sign") == "-":
        raise InputError("a minimal polynomial is monic; no leading scalar expected")
    factors = []
    for factor in result["factors"]:
        x_coeff, form = _affine(factor["terms"], default_index)
        if x_coeff != 1:
            raise InputError(f"factor is not monic in x (coefficient {x_coeff})")
        factors.append((-form, factor["power"]))
    return FactoredPoly(factors)


# ============================================================================
# GOLDEN FILES
# ============================================================================

@dataclass
class GoldenEntry:
    """One golden table: headers name the inputs, `body` is the LaTeX text."""

    source: str
    headers: Dict[str, str]
    body: str
    comments: List[str] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.headers.get('name', '?')

    @property
    def kind(self) -> str:
        return self.headers.get('kind', 'minpoly')

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.headers.get(key, default)


HEADER = pp.Suppress("%") + pp.Word(pp.alphas + "_")("key") + pp.Suppress(":") + pp.rest_of_line("value")


def parse_golden_text(text: str, source: str = "<string>") -> List[GoldenEntry]:
    """
    Split a golden file into entries.

    Entries are separated by blank lines. "% key: value" lines are headers,
    other "%" lines are comments and the remaining lines form the body.
    """
    entries = []
    for chunk in text.split("\n\n"):
        headers: Dict[str, str] = {}
        comments, body = [], []
        for line in chunk.splitlines():
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("%"):
                try:
                    header = HEADER.parse_string(stripped, parse_all=True)
                    headers[header["key"]] = header["value"].strip()
                except pp.ParseException:
                    comments.append(stripped.lstrip("% "))
                continue
            body.append(stripped)
        if not body and not headers:
            continue
        if not body or 'name' not in headers:
            raise InputError(f"{source}: golden entry without name or body")
        entries.append(GoldenEntry(source, headers, " ".join(body), comments))
    logger.debug("%s: %d golden entries", source, len(entries))
    return entries


def parse_highest_weight(rs, text: str):
    """
    Resolve "fund:..." or "eps:..." against a root system.

    Raises:
        InputError: malformed text or wrong coordinate count
    """
    kind, coords = parse_weight(text)
    if kind == "fund":
        return rs.from_fundamental(coords)
    return rs.from_eps(coords)
