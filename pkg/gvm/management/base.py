"""
Shared flag handling for the engine's management commands.

Every subcommand reads the same flags (--type, --pi, --theta, --blocks, --bar,
--convention, --lambda, --format); this base class parses them into engine
objects so the commands themselves only call services and emit results.
"""

import logging
from typing import Dict, Optional, Sequence

from django.core.management.base import BaseCommand

from gvm.exceptions import InputError
from gvm.services.conventions import CONVENTIONS, PSI, Parametrization, make_parametrization
from gvm.services.emitters import TEXT, emit
from gvm.services.parsing import (
    parse_assignment, parse_blocks, parse_highest_weight, parse_indices,
)
from gvm.services.rootsys import RootSystem, Vector, root_system_registry, unit
from gvm.services.weights import WeightSystem, weight_system

logger = logging.getLogger(__name__)


class GvmCommand(BaseCommand):
    """Base class: no database, no system checks, common flag parsers."""

    requires_system_checks = []
    formats: Sequence[str] = (TEXT,)

    # ------------------------------------------------------------------ arguments

    def add_type_argument(self, parser, required: bool = True):
        parser.add_argument(
            '--type',
            type=str,
            required=required,
            help='Root system label, e.g. "E6", "B4" or "gl4"'
        )

    def add_weight_argument(self, parser):
        parser.add_argument(
            '--pi',
            type=str,
            default=None,
            help='Highest weight "fund:1,0,..." or "eps:1,0,..." (default: natural / first fundamental)'
        )

    def add_theta_arguments(self, parser):
        parser.add_argument(
            '--theta',
            type=str,
            default=None,
            help='Simple-root indices of Θ, comma-separated ("none" for the empty set)'
        )
        parser.add_argument(
            '--blocks',
            type=str,
            default=None,
            help='Block sequence n_1,...,n_L = n for gl, B, C, D (stated for Ψ′)'
        )
        parser.add_argument(
            '--bar',
            action='store_true',
            help='Use Θ̄ = Θ ∪ {α′_n} with --blocks (B, C, D)'
        )
        parser.add_argument(
            '--convention',
            type=str,
            default=PSI,
            choices=CONVENTIONS,
            help='Fundamental system the inputs are stated for (default: psi)'
        )

    def add_lambda_argument(self, parser, help_text: str = 'λ values: positional "1,0" or keyed "2=1,5=-1/2"'):
        parser.add_argument(
            '--lambda',
            dest='lambda_values',
            type=str,
            default=None,
            help=help_text
        )

    def add_format_argument(self, parser):
        parser.add_argument(
            '--format',
            type=str,
            default=self.formats[0],
            choices=self.formats,
            help=f'Output format (default: {self.formats[0]})'
        )

    # ------------------------------------------------------------------ resolution

    def root_system(self, options) -> RootSystem:
        if not options.get('type'):
            raise InputError("--type is required")
        return root_system_registry.get(options['type'])

    def highest_weight(self, rs: RootSystem, options) -> Vector:
        if options.get('pi'):
            return parse_highest_weight(rs, options['pi'])
        if rs.center:
            return unit(rs.dim, 1)
        return rs.fundamental_weights[0]

    def weight_system(self, rs: RootSystem, options) -> WeightSystem:
        return weight_system(rs, self.highest_weight(rs, options))

    def parametrization(self, rs: RootSystem, options) -> Parametrization:
        theta = options.get('theta')
        blocks = options.get('blocks')
        return make_parametrization(
            rs,
            theta=parse_indices(theta) if theta is not None else None,
            convention=options.get('convention') or PSI,
            blocks=parse_blocks(blocks) if blocks is not None else None,
            bar=bool(options.get('bar')),
        )

    def assignment(self, param: Parametrization, options, required: bool = True) -> Optional[Dict]:
        text = options.get('lambda_values')
        if text is None:
            if required:
                raise InputError(f"--lambda is required (variables {list(param.variables)})")
            return None
        values = parse_assignment(text)
        if isinstance(values, dict):
            return param.check_assignment(values)
        return param.positional(values)

    # ------------------------------------------------------------------ output

    def emit(self, result, options, **hints):
        self.stdout.write(emit(result, options.get('format') or self.formats[0], **hints))
