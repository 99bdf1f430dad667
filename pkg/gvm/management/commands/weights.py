from gvm.decorators import engine_command
from gvm.management.base import GvmCommand
from gvm.services.emitters import DOT, JSON, TEXT


class Command(GvmCommand):
    help = 'List the weights and multiplicities of an irreducible representation, or its weight poset'
    formats = (TEXT, JSON, DOT)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_weight_argument(parser)
        parser.add_argument(
            '--poset',
            action='store_true',
            help='Show the covering relations of the weight poset (implied by --format dot)'
        )
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        rs = self.root_system(options)
        ws = self.weight_system(rs, options)
        if options['poset'] or options['format'] == DOT:
            self.emit(ws.poset(), options)
        else:
            self.emit(ws, options)
