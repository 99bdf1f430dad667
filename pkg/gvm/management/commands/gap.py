from gvm.decorators import engine_command
from gvm.exceptions import PreconditionError
from gvm.management.base import GvmCommand
from gvm.services.emitters import JSON, LATEX, TEXT
from gvm.services.gap import extremal_low_weights, gap_function


class Command(GvmCommand):
    help = 'Compute the gap functions r_{α,ϖ_α}(λ) for α ∈ Θ, one per extremal low weight'
    formats = (TEXT, JSON, LATEX)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_weight_argument(parser)
        self.add_theta_arguments(parser)
        parser.add_argument(
            '--alpha',
            type=int,
            default=None,
            help='Only this α ∈ Θ (index in the stated convention)'
        )
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        rs = self.root_system(options)
        ws = self.weight_system(rs, options)
        param = self.parametrization(rs, options)
        if options['alpha'] is not None:
            alphas = [param.stated_index(options['alpha'])]
            if alphas[0] not in param.ts.theta:
                raise PreconditionError(f"α_{options['alpha']} is not in Θ = {list(param.stated_theta)}")
        else:
            alphas = list(param.ts.theta)
        if not alphas:
            raise PreconditionError("Θ is empty; gap functions need some α ∈ Θ")

        functions = [
            gap_function(ws, None, None, chain, param)
            for alpha in alphas
            for chain in extremal_low_weights(ws, alpha)
        ]
        self.emit(functions, options, param=param)
