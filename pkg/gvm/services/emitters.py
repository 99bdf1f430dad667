"""
Emitter Service - render engine results as text, JSON, LaTeX or DOT.

Output is deterministic: lists keep the engine's canonical order, JSON keys are
sorted and every rational is written as "p/q".

Features:
    - emit(result, fmt): dispatch on the result type, InputError on a
      format/result mismatch
    - LaTeX factored layout "(x - \\frac{2}{9}\\lambda)(...)" for table diffing
    - DOT for weight posets with simple-root edge labels
    - json_schema(name): the shipped JSON Schema for each JSON payload kind
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Sequence

from cachetools import cached
from django.conf import settings
from django.core.serializers.json import DjangoJSONEncoder

from gvm.exceptions import InputError
from gvm.services.branching import BranchingResult
from gvm.services.conditions import CosetDotOrbit, EveryVerdict, GapExistence, GlnLinkage, RecursionForms
from gvm.services.exactalg import FactoredPoly, LinearForm, LinearProduct, MultiPoly, format_rational
from gvm.services.gap import GapCertificate, GapFunction
from gvm.services.minpoly import (
    CharPolyFactor, ClassicalLimit, GenerationHeuristic, MinPolyEvaluation, MinPolyResult,
)
from gvm.services.rootsys import RootSystem
from gvm.services.weights import WeightPoset, WeightSystem

logger = logging.getLogger(__name__)

TEXT = 'text'
JSON = 'json'
LATEX = 'latex'
DOT = 'dot'
FORMATS = (TEXT, JSON, LATEX, DOT)

NameFn = Callable[[int], str]


class RationalJSONEncoder(DjangoJSONEncoder):
    """DjangoJSONEncoder that writes Fractions as "p/q"."""

    def default(self, o):
        if isinstance(o, Fraction):
            return format_rational(o)
        return super().default(o)


def _dumps(payload) -> str:
    return json.dumps(payload, cls=RationalJSONEncoder, indent=2, sort_keys=True, ensure_ascii=False)


SCHEMAS = ('factored_poly', 'weight_system', 'branching', 'gap_certificate')


@cached(cache={})
def json_schema(name: str) -> Dict:
    """
    The shipped JSON Schema for one payload kind.

    Raises:
        InputError: unknown schema name
    """
    if name not in SCHEMAS:
        raise InputError(f"unknown schema {name!r}; expected one of {', '.join(SCHEMAS)}")
    with open(Path(settings.GVM_SCHEMAS_DIR) / f"{name}.json", encoding="utf-8") as handle:
        return json.load(handle)


def _vector(v: Sequence) -> List[str]:
    return [format_rational(c) for c in v]


# ============================================================================
# VARIABLE NAMES
# ============================================================================

def text_name(index: int) -> str:
    return f"lambda{index}"


def latex_name(index: int) -> str:
    return f"\\lambda_{{{index}}}"


def latex_sole_name(index: int) -> str:
    return "\\lambda"


def mu_text_name(index: int) -> str:
    return f"mu{index}"


def mu_latex_name(index: int) -> str:
    return f"\\mu_{{{index}}}"


def names_for(variables: Sequence[int], latex: bool) -> NameFn:
    """A single variable prints as a bare \\lambda, as in the worked tables."""
    if latex:
        return latex_sole_name if len(variables) == 1 else latex_name
    return text_name


# ============================================================================
# LINEAR FORMS AND PRODUCTS
# ============================================================================

def latex_rational(value: Fraction) -> str:
    """|value| in LaTeX; the caller writes the sign."""
    value = abs(Fraction(value))
    if value.denominator == 1:
        return str(value.numerator)
    return f"\\frac{{{value.numerator}}}{{{value.denominator}}}"


def _terms(form: LinearForm, name: NameFn, latex: bool) -> List[tuple]:
    terms = []
    for j, c in sorted(form.coeffs.items()):
        if latex:
            magnitude = "" if abs(c) == 1 else latex_rational(c)
        else:
            magnitude = "" if abs(c) == 1 else f"{format_rational(abs(c))}*"
        terms.append((c < 0, f"{magnitude}{name(j)}"))
    if form.constant:
        magnitude = latex_rational(form.constant) if latex else format_rational(abs(form.constant))
        terms.append((form.constant < 0, magnitude))
    return terms


def render_form(form: LinearForm, name: NameFn = text_name, latex: bool = False) -> str:
    """
    Example:
        >>> render_form(LinearForm(1, {2: 3}), latex_name, latex=True)
        '3\\\\lambda_{2} + 1'
    """
    terms = _terms(form, name, latex)
    if not terms:
        return "0"
    negative, body = terms[0]
    parts = [f"-{body}" if negative else body]
    parts.extend(f"{'-' if neg else '+'} {body}" for neg, body in terms[1:])
    return " ".join(parts)


def render_root_factor(root: LinearForm, mult: int, name: NameFn, latex: bool) -> str:
    """(x - root) with the root's terms negated in place."""
    terms = _terms(-root, name, latex)
    inner = "x" + "".join(f" {'-' if neg else '+'} {body}" for neg, body in terms)
    if mult == 1:
        return f"({inner})"
    return f"({inner})^{{{mult}}}" if latex else f"({inner})^{mult}"


def render_poly(poly: FactoredPoly, name: NameFn = text_name, latex: bool = False) -> str:
    if not poly.factors:
        return "1"
    return "".join(render_root_factor(root, mult, name, latex) for root, mult in poly.factors)


def render_product(product: LinearProduct, name: NameFn = text_name, latex: bool = False) -> str:
    if product.is_identically_zero():
        return "0"
    scalar = product.scalar
    factors = []
    for form, mult in product.factors:
        body = f"({render_form(form, name, latex)})"
        if mult > 1:
            body += f"^{{{mult}}}" if latex else f"^{mult}"
        factors.append(body)
    sign = "-" if scalar < 0 else ""
    if not factors:
        return sign + latex_rational(scalar) if latex else format_rational(scalar)
    if abs(scalar) == 1:
        prefix = sign
    elif latex:
        prefix = sign + latex_rational(scalar)
    else:
        prefix = f"{sign}{format_rational(abs(scalar))}*"
    return prefix + "".join(factors)


def render_multipoly(poly: MultiPoly) -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for monomial, c in sorted(poly.terms.items()):
        body = "*".join(f"{v}^{e}" if e > 1 else v for v, e in monomial)
        parts.append(f"{format_rational(c)}*{body}" if body else format_rational(c))
    return " + ".join(parts)


def form_json(form: LinearForm) -> Dict:
    return {"constant": form.constant, "coeffs": {str(j): c for j, c in sorted(form.coeffs.items())}}


def poly_json(poly: FactoredPoly) -> Dict:
    return {"factors": [dict(form_json(root), mult=mult) for root, mult in poly.factors]}


def product_json(product: LinearProduct) -> Dict:
    return {
        "scalar": product.scalar,
        "factors": [dict(form_json(form), mult=mult) for form, mult in product.factors],
    }


# ============================================================================
# PER-RESULT RENDERERS
# ============================================================================

def _rootsys(rs: RootSystem, fmt: str, **options) -> str:
    payload = {
        "type": rs.label,
        "rank": rs.rank,
        "dim": rs.dim,
        "simple_roots": [_vector(a) for a in rs.simple_roots],
        "cartan": [list(row) for row in rs.cartan],
        "fundamental_weights": [_vector(w) for w in rs.fundamental_weights],
        "positive_roots": len(rs.positive_roots),
        "rho": _vector(rs.rho),
        "highest_root": _vector(rs.highest_root),
        "marks": _vector(rs.marks),
        "weyl_order": rs.weyl_order,
    }
    if fmt == JSON:
        return _dumps(payload)
    lines = [f"{rs.label}: rank {rs.rank}, ambient dimension {rs.dim}, |W| = {rs.weyl_order}"]
    for i, alpha in zip(rs.indices, rs.simple_roots):
        lines.append(f"  alpha{i} = ({', '.join(_vector(alpha))})   "
                     f"Lambda{i} = ({', '.join(_vector(rs.fundamental_weights[i - 1]))})")
    lines.append(f"  rho = ({', '.join(payload['rho'])})")
    lines.append(f"  highest root = ({', '.join(payload['highest_root'])}), marks {' '.join(payload['marks'])}")
    lines.append(f"  positive roots: {len(rs.positive_roots)}")
    lines.append("  Cartan matrix:")
    lines.extend("    " + " ".join(f"{c:>2}" for c in row) for row in rs.cartan)
    return "\n".join(lines)


def _weights(ws: WeightSystem, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "highest": _vector(ws.highest),
            "dim": ws.dimension,
            "weights": [{"eps": _vector(w), "mult": ws.multiplicity(w)} for w in ws.weights],
        })
    lines = [f"{ws.rs.label} highest weight ({', '.join(_vector(ws.highest))}): dim {ws.dimension}, "
             f"{ws.distinct_count()} distinct weights"]
    lines.extend(f"  ({', '.join(_vector(w))})  x{ws.multiplicity(w)}" for w in ws.weights)
    return "\n".join(lines)


def _node_id(weight: Sequence) -> str:
    return '"' + ",".join(_vector(weight)) + '"'


def _poset(poset: WeightPoset, fmt: str, **options) -> str:
    if fmt == DOT:
        lines = ["digraph weights {", "  rankdir=BT;"]
        for weight in poset.ws.weights:
            mult = poset.ws.multiplicity(weight)
            label = f' [label="{",".join(_vector(weight))} ({mult})"]' if mult > 1 else ""
            lines.append(f"  {_node_id(weight)}{label};")
        for lower, upper, index in sorted(poset.edges(), key=lambda e: (e[0], e[1])):
            lines.append(f'  {_node_id(lower)} -> {_node_id(upper)} [label="{index}"];')
        lines.append("}")
        return "\n".join(lines)
    lines = [f"{poset.ws}: {len(poset.edges())} covering edges"]
    for lower, upper, index in sorted(poset.edges(), key=lambda e: (e[0], e[1])):
        lines.append(f"  ({', '.join(_vector(lower))}) -{index}-> ({', '.join(_vector(upper))})")
    return "\n".join(lines)


def _branching(result: BranchingResult, fmt: str, **options) -> str:
    theta = list(options.get('theta') or result.ts.theta)
    if fmt == JSON:
        return _dumps({
            "theta": theta,
            "lowest": [{"eps": _vector(w), "count": k} for w, k in result.lowest],
        })
    lines = [f"Levi branching over Θ = {theta}: {len(result.lowest)} lowest weights, "
             f"total dimension {result.total_dimension()}"]
    for weight, count in result.lowest:
        dim = result.lowest_dimensions.get(weight)
        suffix = f"  dim {dim}" if dim is not None else ""
        lines.append(f"  ({', '.join(_vector(weight))})  x{count}{suffix}")
    return "\n".join(lines)


def _poly(poly: FactoredPoly, fmt: str, **options) -> str:
    variables = options.get('variables') or poly.variables()
    if fmt == JSON:
        return _dumps(poly_json(poly))
    latex = fmt == LATEX
    name = options.get('name') or names_for(variables, latex)
    return render_poly(poly, name, latex)


def _product(product: LinearProduct, fmt: str, **options) -> str:
    variables = options.get('variables') or sorted({j for form, _ in product.factors for j in form.variables()})
    if fmt == JSON:
        return _dumps(product_json(product))
    latex = fmt == LATEX
    return render_product(product, options.get('name') or names_for(variables, latex), latex)


def _minpoly(result: MinPolyResult, fmt: str, **options) -> str:
    variables = result.param.variables
    if fmt == JSON:
        payload = poly_json(result.poly)
        payload.update({
            "type": result.ws.rs.label,
            "theta": list(result.param.stated_theta),
            "convention": result.param.convention,
            "variables": list(variables),
            "degree": result.degree,
            "squarefree": result.squarefree,
        })
        return _dumps(payload)
    if fmt == LATEX:
        return render_poly(result.poly, names_for(variables, True), True)
    lines = [
        f"q for {result.ws.rs.label}, Θ = {list(result.param.stated_theta)} ({result.param.convention}), "
        f"degree {result.degree}",
        render_poly(result.poly, text_name),
    ]
    if not result.squarefree:
        lines.append(f"  |W̄_Θ(π)| = {len(result.lowest)} > |Ω| = {len(result.omega)}")
    return "\n".join(lines)


def _evaluation(evaluation: MinPolyEvaluation, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "assignment": {str(j): v for j, v in sorted(evaluation.assignment.items())},
            "roots": [{"value": v, "mult": m} for v, m in evaluation.roots],
            "verdict": evaluation.verdict,
            "classes": [{"value": c.value, "kappa": c.kappa, "size": len(c.weights)} for c in evaluation.classes],
            "annihilator": [{"value": v, "mult": m} for v, m in evaluation.annihilator],
        })
    roots = "".join(f"(x - {format_rational(v)})" + (f"^{m}" if m > 1 else "") for v, m in evaluation.roots)
    lines = [f"q at {dict((j, format_rational(v)) for j, v in evaluation.assignment.items())}: {roots or '1'}",
             f"  verdict: {evaluation.verdict}"]
    if evaluation.annihilator:
        ann = "".join(f"(x - {format_rational(v)})" + (f"^{m}" if m > 1 else "") for v, m in evaluation.annihilator)
        lines.append(f"  annihilator: {ann}")
    return "\n".join(lines)


def _charpoly(factors: List[CharPolyFactor], fmt: str, **options) -> str:
    poly = FactoredPoly.from_roots(f.root() for f in factors)
    if fmt == JSON:
        return _dumps({
            "factors": [{"eps": _vector(f.weight), "constant": f.constant} for f in factors],
            "degree": poly.degree,
        })
    latex = fmt == LATEX
    return render_poly(poly, mu_latex_name if latex else mu_text_name, latex)


def _classical(limit: ClassicalLimit, fmt: str, **options) -> str:
    variables = options.get('variables') or limit.qbar.variables()
    if fmt == JSON:
        return _dumps({
            "qbar": poly_json(limit.qbar),
            "rbar": product_json(limit.rbar),
            "ramified": [{"mu": form_json(form), "pairs": len(pairs)} for form, pairs in limit.ramified],
        })
    latex = fmt == LATEX
    name = names_for(variables, latex)
    if latex:
        return render_poly(limit.qbar, name, True)
    lines = [f"qbar = {render_poly(limit.qbar, name)}",
             f"rbar = {render_product(limit.rbar, name)}"]
    for form, pairs in limit.ramified:
        lines.append(f"  ramified: {render_form(form, name)} ({len(pairs)} pairs)")
    return "\n".join(lines)


def _gap_payload(function: GapFunction, alpha: int) -> Dict:
    payload = product_json(function.r)
    payload.update({
        "alpha": alpha,
        "chain": [_vector(w) for w in function.chain.weights],
        "identically_zero": function.identically_zero,
    })
    return payload


def _gap_functions(functions: List[GapFunction], fmt: str, **options) -> str:
    """Gap functions listed per α; `param` maps engine indices to the stated ones."""
    param = options.get('param')
    variables = options.get('variables') or (param.variables if param else sorted(
        {j for f in functions for form in f.first + f.second for j in form.variables()}))

    def stated(function: GapFunction) -> int:
        return param.stated_index(function.chain.alpha) if param else function.chain.alpha

    if fmt == JSON:
        return _dumps([_gap_payload(f, stated(f)) for f in functions])
    latex = fmt == LATEX
    name = names_for(variables, latex)
    if latex:
        return "\n".join(render_product(f.r, name, True) for f in functions)
    return "\n".join(f"r_alpha{stated(f)} = {render_product(f.r, name)}" for f in functions)


def _gap_function(function: GapFunction, fmt: str, **options) -> str:
    if fmt == JSON:
        alpha = options.get('alpha', function.chain.alpha)
        return _dumps(_gap_payload(function, alpha))
    return _gap_functions([function], fmt, **options)


def _certificate(certificate: GapCertificate, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "theta": list(certificate.stated_theta),
            "alpha_results": [
                {
                    "alpha": result.stated_alpha,
                    "candidates": [
                        {
                            "r_factors": [dict(form_json(form), mult=mult)
                                          for form, mult in candidate.function.r.factors],
                            "r_scalar": candidate.function.r.scalar,
                            "identically_zero": candidate.identically_zero,
                            "value": candidate.value,
                        }
                        for candidate in result.candidates
                    ],
                }
                for result in certificate.alpha_results
            ],
            "verdict": certificate.verdict,
            "dominant": certificate.dominant,
            "annihilator": certificate.annihilator,
            "notes": certificate.notes,
        })
    variables = certificate.param.variables
    lines = [f"gap certificate, Θ = {list(certificate.stated_theta)}: {certificate.verdict}"]
    for result in certificate.alpha_results:
        for candidate in result.candidates:
            lines.append(f"  alpha{result.stated_alpha}: r = "
                         f"{render_product(candidate.function.r, names_for(variables, False))}"
                         f" -> {format_rational(candidate.value)}")
    if certificate.annihilator:
        lines.append("  the annihilator equals I_{π,Θ}(λ) + J(λ_Θ)")
    lines.extend(f"  note: {note}" for note in certificate.notes)
    return "\n".join(lines)


def _existence(existence: GapExistence, fmt: str, **options) -> str:
    payload = {
        "condition_i": existence.condition_i,
        "condition_ii": existence.condition_ii,
        "condition_iii": existence.condition_iii,
        "condition_iv": existence.condition_iv,
        "regular": existence.regular,
        "dominant": existence.dominant,
    }
    if fmt == JSON:
        return _dumps(payload)
    first = "equivalent to ii-iv (λ_Θ+ρ not dominant)" if existence.condition_i is None else existence.condition_i
    return "\n".join([
        f"i: {first}",
        f"ii: {existence.condition_ii}",
        f"iii: {existence.condition_iii}",
        f"iv: {existence.condition_iv}",
        f"regular: {existence.regular}, dominant: {existence.dominant}",
    ])


def _every(verdict: EveryVerdict, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "clause": verdict.clause,
            "conditions": verdict.conditions,
            "verdict": verdict.verdict,
            "annihilator": verdict.annihilator,
            "extra_ideals": verdict.extra_ideals,
            "notes": verdict.notes,
        })
    conditions = ", ".join(f"{k}={v}" for k, v in sorted(verdict.conditions.items()))
    lines = [f"clause {verdict.clause}: {verdict.verdict} ({conditions})"]
    if verdict.extra_ideals:
        lines.append(f"  extra ideals J_Θ(λ, π*_α) for α = {verdict.extra_ideals}")
    if verdict.annihilator:
        lines.append("  the annihilator equals I_{π,Θ}(λ) + J(λ_Θ)")
    lines.extend(f"  note: {note}" for note in verdict.notes)
    return "\n".join(lines)


def _linkage(linkage: GlnLinkage, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "blocks": list(linkage.blocks),
            "lambda_bar": list(linkage.lambda_bar),
            "holds": linkage.holds,
            "witnesses": [list(w) for w in linkage.witnesses],
        })
    bar = ", ".join(format_rational(v) for v in linkage.lambda_bar)
    lines = [f"gl{len(linkage.lambda_bar)} blocks {list(linkage.blocks)}, λ̄ = ({bar}): "
             f"{'linked' if linkage.holds else 'not linked'}"]
    lines.extend(f"  transposition ({i} {j})" for i, j in linkage.witnesses)
    return "\n".join(lines)


def _recursion(forms: RecursionForms, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "k": forms.k,
            "ell": forms.ell,
            "f": render_multipoly(forms.f),
            "g": render_multipoly(forms.g) if forms.g is not None else None,
            "exact": forms.exact,
        })
    lines = [f"f({forms.k},{forms.ell}) = {render_multipoly(forms.f)}"]
    if forms.g is not None:
        lines.append(f"g({forms.k},{forms.ell}) = {render_multipoly(forms.g)}")
    lines.append(f"closed forms {'agree' if forms.exact else 'DISAGREE'}")
    return "\n".join(lines)


def _orbit(orbit: CosetDotOrbit, fmt: str, **options) -> str:
    variables = orbit.param.variables
    symbolic = orbit.assignment is None

    def entry(value):
        if symbolic:
            return render_form(value, text_name)
        return format_rational(value)

    if fmt == JSON:
        return _dumps({
            "theta": list(orbit.param.stated_theta),
            "points": [
                {"word": list(word),
                 "eps": [form_json(v) for v in point] if symbolic else _vector(point)}
                for word, point in zip(orbit.words, orbit.points)
            ],
        })
    lines = [f"W(Θ).λ_Θ for Θ = {list(orbit.param.stated_theta)}: {len(orbit.points)} points "
             f"({orbit.distinct} distinct), variables {list(variables)}"]
    for word, point in zip(orbit.words, orbit.points):
        label = "".join(f"s{i}" for i in word) or "e"
        lines.append(f"  {label}: ({', '.join(entry(v) for v in point)})")
    return "\n".join(lines)


def _generation(heuristic: GenerationHeuristic, fmt: str, **options) -> str:
    if fmt == JSON:
        return _dumps({
            "degrees": list(heuristic.degrees),
            "rank": heuristic.rank,
            "expected": heuristic.expected,
            "independent": heuristic.independent,
            "heuristic": heuristic.heuristic,
        })
    return (f"power sums of degrees {list(heuristic.degrees)}: Jacobian rank {heuristic.rank} "
            f"of {heuristic.expected} ({'independent' if heuristic.independent else 'dependent'}, heuristic)")


RENDERERS = [
    (RootSystem, _rootsys, (TEXT, JSON)),
    (WeightSystem, _weights, (TEXT, JSON)),
    (WeightPoset, _poset, (TEXT, DOT)),
    (BranchingResult, _branching, (TEXT, JSON)),
    (FactoredPoly, _poly, (TEXT, JSON, LATEX)),
    (LinearProduct, _product, (TEXT, JSON, LATEX)),
    (MinPolyResult, _minpoly, (TEXT, JSON, LATEX)),
    (MinPolyEvaluation, _evaluation, (TEXT, JSON)),
    (ClassicalLimit, _classical, (TEXT, JSON, LATEX)),
    (GapFunction, _gap_function, (TEXT, JSON, LATEX)),
    (GapCertificate, _certificate, (TEXT, JSON)),
    (GapExistence, _existence, (TEXT, JSON)),
    (EveryVerdict, _every, (TEXT, JSON)),
    (GlnLinkage, _linkage, (TEXT, JSON)),
    (RecursionForms, _recursion, (TEXT, JSON)),
    (CosetDotOrbit, _orbit, (TEXT, JSON)),
    (GenerationHeuristic, _generation, (TEXT, JSON)),
]


def emit(result, fmt: str = TEXT, **options) -> str:
    """
    Render a result in the requested format.

    Args:
        result: an engine result, or a list of CharPolyFactor or GapFunction
        fmt: text, json, latex or dot
        **options: renderer hints (variables, name, theta, alpha, param)

    Raises:
        InputError: unknown format or a format the result does not support
    """
    if fmt not in FORMATS:
        raise InputError(f"unknown format '{fmt}'; expected one of {', '.join(FORMATS)}")
    if isinstance(result, list) and result and all(isinstance(f, CharPolyFactor) for f in result):
        if fmt == DOT:
            raise InputError("format 'dot' is not available for a characteristic polynomial")
        return _charpoly(result, fmt, **options)
    if isinstance(result, list) and result and all(isinstance(f, GapFunction) for f in result):
        if fmt == DOT:
            raise InputError("format 'dot' is not available for gap functions")
        return _gap_functions(result, fmt, **options)
    for kind, renderer, formats in RENDERERS:
        if isinstance(result, kind):
            if fmt not in formats:
                raise InputError(f"format '{fmt}' is not available for {kind.__name__}")
            return renderer(result, fmt, **options)
    raise InputError(f"no emitter for {type(result).__name__}")
