from gvm.decorators import engine_command
from gvm.exceptions import InputError
from gvm.management.base import GvmCommand
from gvm.services.conditions import (
    gapexist_check, gln_linkage_check, prop_every_certify, recursion_closed_forms,
)
from gvm.services.emitters import JSON, TEXT
from gvm.services.gap import gap_certify

RULES = ('gap', 'every', 'gapexist', 'linkage', 'recursion')


class Command(GvmCommand):
    help = 'Certify the gap at a rational λ, or check one of the supporting conditions'
    formats = (TEXT, JSON)

    def add_arguments(self, parser):
        self.add_type_argument(parser, required=False)
        self.add_weight_argument(parser)
        self.add_theta_arguments(parser)
        self.add_lambda_argument(parser)
        parser.add_argument(
            '--rule',
            type=str,
            default='gap',
            choices=RULES,
            help='gap certificate (default), type rule, existence conditions, gl linkage or recursion'
        )
        parser.add_argument('--k', type=int, default=None, help='k for --rule recursion')
        parser.add_argument('--ell', type=int, default=None, help='ℓ for --rule recursion')
        parser.add_argument(
            '--limit',
            type=int,
            default=None,
            help='Weyl enumeration bound for this run (default: 100000)'
        )
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        rule = options['rule']
        if rule == 'recursion':
            if options['k'] is None or options['ell'] is None:
                raise InputError("--rule recursion needs --k and --ell")
            self.emit(recursion_closed_forms(options['k'], options['ell']), options)
            return

        rs = self.root_system(options)
        param = self.parametrization(rs, options)
        values = self.assignment(param, options)

        if rule == 'gapexist':
            result = gapexist_check(param, values, options['limit'])
        elif rule == 'linkage':
            if rs.family != 'gl' or not getattr(param, 'blocks', None):
                raise InputError("--rule linkage needs a gl type and --blocks")
            result = gln_linkage_check(param.blocks, [values[j] for j in param.variables],
                                       options['limit'])
        else:
            ws = self.weight_system(rs, options)
            if rule == 'every':
                result = prop_every_certify(ws, param, values)
            else:
                result = gap_certify(ws, param, None, values)
        self.emit(result, options, param=param)
