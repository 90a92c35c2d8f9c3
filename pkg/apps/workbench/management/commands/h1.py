"""
First cohomology from a presentation by Fox calculus.

    python manage.py h1 --module alt2
    python manage.py h1 --dataset s3 --module natural
"""

from django.core.management.base import CommandError

from apps.core.constants import ModuleKind
from apps.foxone.fox import h1
from apps.groupkit.presentations import images_for, load_generator_matrices, load_presentation
from apps.repfun.functors import functor
from apps.repfun.invariants import fixed_points, quotient_by_invariants
from apps.repfun.representations import MatrixRep
from apps.workbench.base import WorkbenchCommand
from apps.workbench.datasets import co1_rep, s3_rep

BUNDLED = {'co1': co1_rep, 's3': s3_rep}


def coefficient_module(rep, kind):
    """The module of the given kind built from the natural representation."""
    kind = ModuleKind(kind)
    if kind == ModuleKind.NATURAL:
        return rep
    if kind == ModuleKind.TRIVIAL:
        return MatrixRep.trivial(rep.source, rep.modulus)
    if kind == ModuleKind.QUOTIENT_BY_INVARIANT:
        return quotient_by_invariants(functor(rep, ModuleKind.ALT2))
    return functor(rep, kind.value)


class Command(WorkbenchCommand):
    help = 'Compute H^1 of a presented group with coefficients built from its matrices'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dataset', choices=sorted(BUNDLED), default='co1')
        parser.add_argument('--presentation', help='Presentation file')
        parser.add_argument('--generators', help='Generator matrix file')
        parser.add_argument('--module', choices=ModuleKind.values, default=ModuleKind.NATURAL,
                            help='Coefficient module')

    def run(self, *args, **options):
        if bool(options['presentation']) != bool(options['generators']):
            raise CommandError('--presentation and --generators go together')
        if options['presentation']:
            presentation = load_presentation(options['presentation'])
            images = images_for(presentation, load_generator_matrices(options['generators']))
            rep = MatrixRep.from_generator_images(presentation, images, name=presentation.name)
        else:
            rep = BUNDLED[options['dataset']]()
        module = coefficient_module(rep, options['module'])
        result = h1(rep.source, module)
        self.title(f"H^1({rep.source}, {module})")
        self.table(
            ('module', 'dimension', 'H0 dimension', 'H1'),
            [(options['module'], module.dim, fixed_points(module).rows, result)],
        )
