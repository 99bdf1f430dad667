"""
Golden Table Service - re-derive the worked tables and diff them against LaTeX goldens.

Each family has one file under settings.GVM_GOLDENS_DIR. An entry names its
inputs in "% key: value" headers:

    % name: E6 theta1
    % source: ex:E6             (where the table comes from)
    % type: E6
    % pi: fund:1,0,0,0,0,0
    % convention: psi-prime
    % theta: 2,3,4,5,6          (or "% blocks: 2,4" and "% bar: yes")
    % kind: minpoly             (minpoly, restricted or gap)
    % alpha: 1                  (gap entries, stated convention)
    % fix: 3=0                  (restricted entries)

followed by the LaTeX body, recorded exactly as the latex emitter prints it.
Comparison is on the text: factor order, spacing and \\frac layout all count.

Features:
    - Per-family runs and `--all` with an optional process pool
    - Deterministic report order (file order, then entry order)
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from django.conf import settings

from gvm.exceptions import GvmError, InputError
from gvm.services.conventions import PSI, make_parametrization
from gvm.services.emitters import latex_name, latex_sole_name, render_poly, render_product
from gvm.services.exactalg import FactoredPoly, LinearForm
from gvm.services.gap import extremal_low_weights, gap_function
from gvm.services.minpoly import global_min_poly
from gvm.services.parsing import (
    GoldenEntry, parse_assignment, parse_blocks, parse_golden_text, parse_highest_weight,
    parse_indices, parse_latex_poly, parse_latex_product,
)
from gvm.services.rootsys import root_system_registry
from gvm.services.weights import weight_system

logger = logging.getLogger(__name__)

FAMILY_FILES: Dict[str, str] = {
    'G2': 'g2.tex',
    'F4': 'f4.tex',
    'E6': 'e6.tex',
    'E7': 'e7.tex',
    'E8': 'e8.tex',
    'gl': 'gl.tex',
    'B': 'b.tex',
    'C': 'c.tex',
    'D': 'd.tex',
}
FAMILIES = tuple(FAMILY_FILES)

KINDS = ('minpoly', 'restricted', 'gap')


@dataclass
class GoldenCheck:
    name: str
    passed: bool
    expected: str
    computed: str
    message: str = ""


@dataclass
class GoldenReport:
    family: str
    checks: List[GoldenCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[GoldenCheck]:
        return [check for check in self.checks if not check.passed]


# ============================================================================
# LOADING
# ============================================================================

def golden_path(family: str) -> Path:
    if family not in FAMILY_FILES:
        raise InputError(f"unknown table family '{family}'; expected one of {', '.join(FAMILIES)}")
    return Path(settings.GVM_GOLDENS_DIR) / FAMILY_FILES[family]


def load_goldens(family: str) -> List[GoldenEntry]:
    path = golden_path(family)
    if not path.exists():
        raise InputError(f"golden file {path} is missing")
    return parse_golden_text(path.read_text(encoding="utf-8"), source=path.name)


# ============================================================================
# CHECKING
# ============================================================================

def _entry_inputs(entry: GoldenEntry):
    label = entry.get('type')
    if not label or not entry.get('pi'):
        raise InputError(f"{entry.source}: entry '{entry.name}' needs type and pi headers")
    rs = root_system_registry.get(label)
    ws = weight_system(rs, parse_highest_weight(rs, entry.get('pi')))
    blocks = entry.get('blocks')
    theta = entry.get('theta')
    param = make_parametrization(
        rs,
        theta=parse_indices(theta) if theta is not None else None,
        convention=entry.get('convention', PSI),
        blocks=parse_blocks(blocks) if blocks is not None else None,
        bar=entry.get('bar', 'no').lower() in ('yes', 'true', '1'),
    )
    return rs, ws, param


def _sole_index(param) -> Optional[int]:
    return param.variables[0] if len(param.variables) == 1 else None


def _name(param):
    return latex_sole_name if len(param.variables) == 1 else latex_name


def restricted_poly(poly: FactoredPoly, fixed: Dict[int, LinearForm]) -> FactoredPoly:
    """q on the slice where some λ_j are fixed, coincident roots merged."""
    return FactoredPoly.from_roots({root.substitute(fixed) for root in poly.roots()})


def _layout_note(same_value: bool) -> str:
    return "same factors, different layout" if same_value else ""


def check_entry(entry: GoldenEntry) -> GoldenCheck:
    """
    Recompute one golden entry and compare its LaTeX rendering with the body.

    The comparison is on the rendered text; only trailing whitespace is
    ignored. When the text differs the body is parsed back so the report can
    tell a layout change from a different polynomial.

    Raises:
        InputError: malformed headers
    """
    kind = entry.kind
    if kind not in KINDS:
        raise InputError(f"{entry.source}: unknown kind '{kind}' in entry '{entry.name}'")
    _, ws, param = _entry_inputs(entry)
    expected = entry.body.rstrip()
    name = _name(param)

    if kind in ('minpoly', 'restricted'):
        computed = global_min_poly(ws, param=param).poly
        sole = _sole_index(param)
        if kind == 'restricted':
            fix = parse_assignment(entry.get('fix', ''))
            if not isinstance(fix, dict) or not fix:
                raise InputError(f"{entry.source}: restricted entry '{entry.name}' needs 'fix: j=v'")
            computed = restricted_poly(computed, {j: LinearForm(v) for j, v in fix.items()})
            free = [j for j in param.variables if j not in fix]
            sole = free[0] if len(free) == 1 else None
            name = latex_sole_name if len(free) == 1 else latex_name
        text = render_poly(computed, name, latex=True)
        if text == expected:
            return GoldenCheck(entry.name, True, expected, text)
        return GoldenCheck(entry.name, False, expected, text,
                           _layout_note(parse_latex_poly(expected, sole) == computed))

    stated_alpha = int(entry.get('alpha', '0'))
    alpha = param.stated_index(stated_alpha)
    candidates = [gap_function(ws, None, None, chain, param).r for chain in extremal_low_weights(ws, alpha)]
    if not candidates:
        return GoldenCheck(entry.name, False, expected, "", f"no extremal low weight for α_{stated_alpha}")
    rendered = [render_product(r, name, True) for r in candidates]
    if expected in rendered:
        return GoldenCheck(entry.name, True, expected, expected)
    parsed = parse_latex_product(expected, _sole_index(param))
    return GoldenCheck(entry.name, False, expected, rendered[0], _layout_note(parsed in candidates))


def _safe_check(entry: GoldenEntry) -> GoldenCheck:
    try:
        return check_entry(entry)
    except GvmError as exc:
        logger.warning("golden '%s' could not be recomputed: %s", entry.name, exc)
        return GoldenCheck(entry.name, False, entry.body, "", str(exc))


def _init_worker(settings_module: str) -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", settings_module)
    import django

    django.setup()


def run_family(family: str, workers: int = 1) -> GoldenReport:
    """
    Recompute every entry of one family, in file order.

    Example:
        >>> run_family('G2').passed
        True
    """
    entries = load_goldens(family)
    if workers > 1 and len(entries) > 1:
        settings_module = os.environ.get("DJANGO_SETTINGS_MODULE", "gvmsite.settings")
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(settings_module,)) as pool:
            checks = list(pool.map(_safe_check, entries))
    else:
        checks = [_safe_check(entry) for entry in entries]
    report = GoldenReport(family, checks)
    logger.info("tables %s: %d/%d passed", family, len(checks) - len(report.failures), len(checks))
    return report


def run_all(workers: int = 1) -> List[GoldenReport]:
    return [run_family(family, workers) for family in FAMILIES]


def render_report(reports: List[GoldenReport]) -> Tuple[str, bool]:
    """Text report and overall success."""
    lines = []
    for report in reports:
        passed = len(report.checks) - len(report.failures)
        lines.append(f"{report.family}: {passed}/{len(report.checks)} tables match")
        for check in report.failures:
            lines.append(f"  MISMATCH {check.name}")
            lines.append(f"    expected: {check.expected}")
            lines.append(f"    computed: {check.computed}")
            if check.message:
                lines.append(f"    {check.message}")
    return "\n".join(lines), all(report.passed for report in reports)
