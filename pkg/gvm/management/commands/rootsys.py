from gvm.decorators import engine_command
from gvm.management.base import GvmCommand
from gvm.services.emitters import JSON, TEXT


class Command(GvmCommand):
    help = 'Show the root system data of a type: simple roots, Cartan matrix, ρ, highest root, |W|'
    formats = (TEXT, JSON)

    def add_arguments(self, parser):
        self.add_type_argument(parser)
        self.add_format_argument(parser)

    @engine_command
    def handle(self, *args, **options):
        self.emit(self.root_system(options), options)
