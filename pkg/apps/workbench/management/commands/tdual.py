"""
Validate or dualize a finite-group T-duality datum file.

    python manage.py tdual validate datum.txt
    python manage.py tdual dualize datum.txt --output dual.txt
"""

from django.core.management.base import CommandError

from apps.tdual.datum import dual_total_group, dualize, total_group, validate
from apps.tdual.files import dump_datum, load_datum, save_datum
from apps.workbench.base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = 'Check d(beta) = <alpha u kappa> for a datum, or write its T-dual'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('action', choices=('validate', 'dualize'))
        parser.add_argument('datum', help='Datum file')
        parser.add_argument('--output', help='Where dualize writes the dual (default: stdout)')

    def run(self, action, **options):
        datum = load_datum(options['datum'])
        if action == 'validate':
            violation = validate(datum)
            if violation is not None:
                raise CommandError(f"{datum} is not valid: {violation}")
            self.table(('datum', 'G order', 'dual G order', 'assumptions'),
                       [(datum, total_group(datum).order, dual_total_group(datum).order,
                         datum.assumptions)])
            return
        dual = dualize(datum)
        if options['output']:
            save_datum(dual, options['output'])
            self.stdout.write(f"Wrote the dual of {datum} to {options['output']}")
        else:
            self.stdout.write(dump_datum(dual), ending='')
