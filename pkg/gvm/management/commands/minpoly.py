"""
minpoly: the global minimal polynomial q_{π,Θ}(x;λ).

Usage:
    python manage.py minpoly --type E6 --pi fund:1,0,0,0,0,0 --theta 2,3,4,5,6 \
        --convention psi-prime --format latex
    python manage.py minpoly --type G2 --theta 1 --lambda 2
    python manage.py minpoly --type A3 --theta none --tau 1:3,3:1
"""

from gvm.decorators import engine_command
from gvm.exceptions import GvmError, InputError
from gvm.management.base import GvmCommand
from gvm.services.emitters import JSON, LATEX, TEXT
from gvm.services.exactalg import LinearForm
from gvm.services.goldens import restricted_poly
from gvm.services.minpoly import (
    SPECIAL_KINDS, classical_limit, global_min_poly, min_poly_at, specialized_min_poly, tau_min_poly,
)
from gvm.services.parsing import parse_assignment, parse_tau


class Command(GvmCommand):
    help = 'Compute q_{π,Θ}(x;λ), optionally at a rational λ, on a τ-fixed slice or in the classical limit'
    formats = (TEXT, JSON, LATEX)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_weight_argument(parser)
        self.add_theta_arguments(parser)
        self.add_lambda_argument(parser, 'Evaluate at this λ and report the minimality verdict')
        parser.add_argument(
            '--tau',
            type=str,
            default=None,
            help='Diagram automorphism "i:j,..." for the τ-symmetrized polynomial'
        )
        parser.add_argument(
            '--kind',
            type=str,
            default=None,
            choices=SPECIAL_KINDS,
            help='Use the closed form for this kind of representation (checked against the general formula)'
        )
        parser.add_argument(
            '--fix',
            type=str,
            default=None,
            help='Restrict to a slice "j=v,..." and merge coincident roots'
        )
        parser.add_argument(
            '--classical',
            action='store_true',
            help='Show the classical limit q̄, r̄ and the ramified elements'
        )
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        chosen = [flag for flag in ('lambda_values', 'tau', 'kind', 'fix', 'classical') if options.get(flag)]
        if len(chosen) > 1:
            raise InputError("--lambda, --tau, --kind, --fix and --classical are mutually exclusive")

        rs = self.root_system(options)
        ws = self.weight_system(rs, options)
        param = self.parametrization(rs, options)

        if options.get('classical'):
            self.emit(classical_limit(ws, param=param), options, variables=param.variables)
            return
        if options.get('tau'):
            poly = tau_min_poly(ws, None, parse_tau(options['tau']), param=param)
            self.emit(poly, options)
            return
        if options.get('kind'):
            poly = specialized_min_poly(ws, None, None, options['kind'], param=param)
            if poly != global_min_poly(ws, param=param).poly:
                raise GvmError(f"the {options['kind']} closed form disagrees with the general formula")
            self.emit(poly, options, variables=param.variables)
            return

        result = global_min_poly(ws, param=param)
        if options.get('fix'):
            fixed = parse_assignment(options['fix'])
            if not isinstance(fixed, dict):
                raise InputError("--fix takes keyed values such as 3=0")
            param.check_assignment(fixed)
            poly = restricted_poly(result.poly, {j: LinearForm(v) for j, v in fixed.items()})
            self.emit(poly, options, variables=[j for j in param.variables if j not in fixed])
            return
        values = self.assignment(param, options, required=False)
        if values is not None:
            if options['format'] == LATEX:
                raise InputError("format 'latex' is not available for an evaluated polynomial")
            self.emit(min_poly_at(result, values), options)
            return
        self.emit(result, options)
