"""
Integral cohomology of a product of two cyclic groups by the Kunneth formula.

    python manage.py kunneth 3 3
    python manage.py kunneth 2 2 --degree 3 --brute
"""

from apps.cochain.cohomology import cohomology_u1
from apps.groupkit.tables import cyclic, direct_product
from apps.specseq.kunneth import cyclic_integral_cohomology, kunneth_integral
from apps.workbench.base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = 'H^n(Z_a x Z_b, Z) by the Kunneth formula, optionally against the bar complex'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('a', type=int)
        parser.add_argument('b', type=int)
        parser.add_argument('--degree', type=int, default=4, help='Integral degree n')
        parser.add_argument('--brute', action='store_true',
                            help='Also compute H^(n-1)(Z_a x Z_b, U(1)) from cochains')

    def run(self, *args, **options):
        a, b, n = options['a'], options['b'], options['degree']
        formula = kunneth_integral(cyclic_integral_cohomology(a, top=n),
                                   cyclic_integral_cohomology(b, top=n), n)
        row = [f"Z{a} x Z{b}", n, formula]
        headers = ['group', 'degree', 'Kunneth']
        if options['brute']:
            group = direct_product(cyclic(a), cyclic(b), name=f"Z{a}xZ{b}")
            brute = cohomology_u1(group, n - 1, budget_seconds=options['budget_seconds'],
                                  long_running=True)
            headers += ['cochains', 'match']
            row += [brute, brute == formula]
        self.table(headers, [row])
