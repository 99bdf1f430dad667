from gvm.decorators import engine_command
from gvm.management.base import GvmCommand
from gvm.services.branching import levi_lowest_weights
from gvm.services.emitters import JSON, TEXT


class Command(GvmCommand):
    help = 'Restrict a representation to the Levi subalgebra g_Θ and list the lowest weights W̄_Θ(π)'
    formats = (TEXT, JSON)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_weight_argument(parser)
        self.add_theta_arguments(parser)
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        rs = self.root_system(options)
        ws = self.weight_system(rs, options)
        param = self.parametrization(rs, options)
        # weights stay in engine (Ψ) coordinates; Θ is echoed as stated
        self.emit(levi_lowest_weights(ws, param.ts), options, theta=param.stated_theta)
