from gvm.decorators import engine_command
from gvm.exceptions import GvmError
from gvm.management.base import GvmCommand
from gvm.services.emitters import JSON, LATEX, TEXT
from gvm.services.minpoly import char_poly, power_sum_generation, rho_shift_identity


class Command(GvmCommand):
    help = 'Compute the characteristic polynomial q_π(x) over the Cartan subalgebra'
    formats = (TEXT, JSON, LATEX)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_weight_argument(parser)
        parser.add_argument(
            '--check-rho',
            action='store_true',
            help='Also verify that q_π at λ+ρ reproduces q_{π,∅}(x;λ)'
        )
        parser.add_argument(
            '--generation',
            action='store_true',
            help='Report the Jacobian-rank heuristic for the power sums T^(k) instead'
        )
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        rs = self.root_system(options)
        ws = self.weight_system(rs, options)
        if options['generation']:
            self.emit(power_sum_generation(ws), options)
            return
        if options['check_rho'] and not rho_shift_identity(ws):
            raise GvmError("the ρ-shift identity fails")
        self.emit(char_poly(ws), options)
