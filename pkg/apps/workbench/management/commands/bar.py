"""
Cohomology of a small group from the normalized bar complex.

    python manage.py bar Z4 --order 4 --multipliers 3 --degree 2
    python manage.py bar 2^2 --degree 3 --u1
"""

from apps.cochain.cohomology import cohomology_module, cohomology_u1
from apps.cochain.modules import CyclicModule
from apps.groupkit.tables import group_from_spec
from apps.workbench.base import WorkbenchCommand, parse_integers


class Command(WorkbenchCommand):
    help = 'Compute H^k(G, Z/m) with a twisted action, or H^k(G, U(1))'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('group', help="Group name such as Z6, D8, Q16, S3, A4, 2^2, Z2xS3")
        parser.add_argument('--degree', type=int, default=1)
        parser.add_argument('--order', type=int, default=2, help='Order m of the module Z/m')
        parser.add_argument('--multipliers', default='',
                            help='Action of each generator as a unit mod m, comma-separated')
        parser.add_argument('--u1', action='store_true', help='U(1) coefficients')
        parser.add_argument('--long-running', action='store_true',
                            help='Allow U(1) cohomology above the fast order')

    def run(self, *args, **options):
        group = group_from_spec(options['group'])
        k = options['degree']
        if options['u1']:
            coefficients = 'U(1)'
            result = cohomology_u1(group, k, budget_seconds=options['budget_seconds'],
                                   long_running=options['long_running'])
        else:
            multipliers = parse_integers(options['multipliers'], 'multipliers') or None
            module = CyclicModule.on_group(group, options['order'], multipliers)
            coefficients = str(module)
            result = cohomology_module(group, module, k)
        self.table(('group', 'order', 'coefficients', 'degree', 'H^k', 'exponent'),
                   [(group, group.order, coefficients, k, result, result.exponent)])
