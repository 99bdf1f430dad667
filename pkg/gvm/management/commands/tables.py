from django.core.management.base import CommandError

from gvm.decorators import engine_command
from gvm.exceptions import InputError
from gvm.management.base import GvmCommand
from gvm.services.goldens import FAMILIES, render_report, run_all, run_family


class Command(GvmCommand):
    help = 'Recompute the worked tables and compare them with the LaTeX goldens'

    def add_arguments(self, parser):
        parser.add_argument(
            '--family',
            type=str,
            choices=FAMILIES,
            default=None,
            help='One table family'
        )
        parser.add_argument(
            '--all',
            action='store_true',
            help='Every family'
        )
        parser.add_argument(
            '--workers',
            type=int,
            default=1,
            help='Process pool size'
        )

    @engine_command
    def handle(self, *args, **options):
        if options['all'] == bool(options['family']):
            raise InputError("give exactly one of --family or --all")
        if options['all']:
            reports = run_all(options['workers'])
        else:
            reports = [run_family(options['family'], options['workers'])]
        text, ok = render_report(reports)
        self.stdout.write(text)
        if not ok:
            raise CommandError("tables do not match the goldens", returncode=1)
        self.stdout.write(self.style.SUCCESS("all tables match"))
