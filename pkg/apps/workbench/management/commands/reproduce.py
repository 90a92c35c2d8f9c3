"""
Recompute published values suite by suite.

    python manage.py reproduce all
    python manage.py reproduce chern kunneth --format csv
    python manage.py reproduce q16 --long-running --budget-seconds 600
"""

from django.core.management.base import CommandError

from apps.core.constants import Suite
from apps.workbench.base import WorkbenchCommand
from apps.workbench.suites import ROW_HEADERS, default_context, run_suites


class Command(WorkbenchCommand):
    help = 'Print each recomputed value next to the expected one; fail on any mismatch'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('suites', nargs='+', choices=Suite.values)
        parser.add_argument('--long-running', action='store_true',
                            help='Allow the q16 suite')
        parser.add_argument('--seed', type=int, default=None,
                            help='Seed of the randomized suites (default WORKBENCH_RANDOM_SEED)')
        parser.add_argument('--workers', type=int, default=1,
                            help='Run suites in parallel threads')

    def run(self, *args, **options):
        context = default_context(options['seed'], options['budget_seconds'],
                                  options['long_running'])
        rows = run_suites(options['suites'], context, workers=options['workers'])
        self.title(f"Reproduce: {', '.join(options['suites'])} (seed {context.seed})")
        self.table(ROW_HEADERS, [row.as_tuple() for row in rows])
        mismatches = [row for row in rows if not row.match]
        if mismatches:
            raise CommandError(f"{len(mismatches)} of {len(rows)} claims do not match: "
                               + '; '.join(row.claim for row in mismatches))
