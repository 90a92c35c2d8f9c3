"""
Chern classes of representations of the binary dihedral group of order 16.

    python manage.py chern constants
    python manage.py chern decompose --traces 4,-4,0,0
    python manage.py chern c2 --column column.csv
    python manage.py chern verify --traces 128,0,0,0
    python manage.py chern sym
"""

from django.core.management.base import CommandError

from apps.chern16.characters import MergedClassFunction, decompose_merged
from apps.chern16.columns import load_column
from apps.chern16.ring import (
    c2_restricted,
    chern_constants,
    sym_power_table,
    verify_monster_divisibility,
    whitney_total,
)
from apps.core.constants import Q16_IRREP_LABELS
from apps.workbench.base import WorkbenchCommand, parse_integers
from apps.workbench.datasets import quoted_constants

ACTIONS = ('decompose', 'c2', 'constants', 'verify', 'sym')
COLUMN_ACTIONS = ('decompose', 'c2', 'verify')


class Command(WorkbenchCommand):
    help = 'Decompose merged character columns and compute their second Chern class'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('action', choices=ACTIONS)
        parser.add_argument('--traces', help='Traces on 1A,2B,4D,8F, comma-separated')
        parser.add_argument('--column', help='Character column CSV file')

    def column(self, options):
        if bool(options['traces']) == bool(options['column']):
            raise CommandError('Give exactly one of --traces and --column')
        if options['column']:
            return load_column(options['column'])
        return MergedClassFunction(tuple(parse_integers(options['traces'], 'traces')))

    def run(self, action, **options):
        if action in COLUMN_ACTIONS:
            getattr(self, f"run_{action}")(self.column(options))
        else:
            getattr(self, f"run_{action}")()

    def run_decompose(self, column):
        multiplicities = decompose_merged(column)
        self.table(('class function',) + Q16_IRREP_LABELS, [(column,) + multiplicities])

    def run_c2(self, column):
        multiplicities = decompose_merged(column)
        self.table(('class function', 'total Chern class', 'c2 mod 16'),
                   [(column, whitney_total(multiplicities), c2_restricted(column))])

    def run_verify(self, column):
        report = verify_monster_divisibility(column)
        rows = [(name, ok) for name, ok in report.checks.items()]
        if report.passed:
            rows.append(('c2 mod 16', c2_restricted(column)))
        self.table(('condition', 'holds'), rows)
        if not report.passed:
            raise CommandError(f"{column} fails: {', '.join(report.failures())}")

    def run_constants(self):
        constants = chern_constants()
        self.title('Derivation')
        for number, step in enumerate(constants.steps, start=1):
            self.stdout.write(f"{number}. {step}")
        self.table(('irreducible', 'c1', 'c2', 'total'),
                   [(label, constants.c1(label), constants.c2(label), total)
                    for label, total in constants.totals.items()])
        entry = quoted_constants()['c1_v1_squared']
        self.stdout.write(f"quoted: c1(V1)^2 = {entry['value']} ({entry['citation']})")

    def run_sym(self):
        self.table(('k', 'decomposition', 'c2'),
                   [(result.k, ' + '.join(result.summands()), result.c2_integral)
                    for result in sym_power_table()])
