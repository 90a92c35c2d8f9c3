"""
Read a character column CSV, validate it and report its decomposition.

    python manage.py ingest_column column.csv --output normalized.csv
"""

from apps.chern16.characters import decompose_merged
from apps.chern16.columns import load_column, save_column
from apps.chern16.ring import verify_monster_divisibility
from apps.core.constants import Q16_IRREP_LABELS
from apps.workbench.base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = 'Ingest a merged character column on the classes 1A, 2B, 4D, 8F'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('column', help='CSV file with header class,order,value')
        parser.add_argument('--output', help='Write the column back in normalized form')

    def run(self, *args, **options):
        column = load_column(options['column'])
        multiplicities = decompose_merged(column)
        report = verify_monster_divisibility(column)
        self.table(('column',) + Q16_IRREP_LABELS + ('divisibility',),
                   [(column,) + multiplicities + (report.passed,)])
        if options['output']:
            save_column(column, options['output'])
