from gvm.decorators import engine_command
from gvm.management.base import GvmCommand
from gvm.services.conditions import coset_dot_orbit
from gvm.services.emitters import JSON, TEXT


class Command(GvmCommand):
    help = 'List the dot-orbit W(Θ).λ_Θ over the minimal coset representatives'
    formats = (TEXT, JSON)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_theta_arguments(parser)
        self.add_lambda_argument(parser, 'Evaluate the points at this λ (symbolic when omitted)')
        parser.add_argument(
            '--limit',
            type=int,
            default=None,
            help='Weyl enumeration bound for this run (default: 100000)'
        )
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        rs = self.root_system(options)
        param = self.parametrization(rs, options)
        values = self.assignment(param, options, required=False)
        self.emit(coset_dot_orbit(param, values, options['limit']), options)
