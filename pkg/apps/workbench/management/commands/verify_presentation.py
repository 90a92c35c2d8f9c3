"""
Check generator matrices against every relator of a presentation.

    python manage.py verify_presentation
    python manage.py verify_presentation --dataset s3
    python manage.py verify_presentation --presentation p.txt --generators g.txt
"""

from django.core.management.base import CommandError

from apps.groupkit.presentations import (
    failing_relators,
    images_for,
    load_generator_matrices,
    load_presentation,
)
from apps.workbench.base import WorkbenchCommand
from apps.workbench.datasets import (
    CO1_GENERATORS,
    CO1_PRESENTATION,
    S3_GENERATORS,
    S3_PRESENTATION,
    verify_asset,
)

DATASETS = {
    'co1': (CO1_PRESENTATION, CO1_GENERATORS),
    's3': (S3_PRESENTATION, S3_GENERATORS),
}


class Command(WorkbenchCommand):
    help = 'Evaluate every relator on the generator matrices; fail if any relator is not 1'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dataset', choices=sorted(DATASETS), default='co1',
                            help='Bundled dataset used when no files are given')
        parser.add_argument('--presentation', help='Presentation file (gens:/rel: lines)')
        parser.add_argument('--generators', help='Generator matrix file (gen: blocks)')

    def run(self, *args, **options):
        if bool(options['presentation']) != bool(options['generators']):
            raise CommandError('--presentation and --generators go together')
        if options['presentation']:
            presentation_path, generators_path = options['presentation'], options['generators']
        else:
            names = DATASETS[options['dataset']]
            presentation_path, generators_path = (verify_asset(name) for name in names)
        presentation = load_presentation(presentation_path)
        images = images_for(presentation, load_generator_matrices(generators_path))
        failures = set(failing_relators(presentation, images))
        self.title(f"{presentation}: {len(presentation.relators)} relators")
        self.table(
            ('relator', 'letters', 'word', 'status'),
            [(index, len(relator), presentation.relator_text(index),
              'FAIL' if index in failures else 'ok')
             for index, relator in enumerate(presentation.relators)],
        )
        if failures:
            raise CommandError(f"{len(failures)} of {len(presentation.relators)} relators fail")
