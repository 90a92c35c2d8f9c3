"""
Shared behaviour of the workbench management commands.
"""

import logging
import time

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from apps.core.constants import OutputFormat
from apps.core.exceptions import WorkbenchError
from apps.core.utils.validators import validate_budget_seconds
from .output import banner, render_table

logger = logging.getLogger('apps.workbench')


def error_text(exc):
    if isinstance(exc, ValidationError):
        return '; '.join(exc.messages)
    return str(exc)


def parse_integers(text, what='value'):
    """'1, -4,0' -> [1, -4, 0]."""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise CommandError(f"{what} must be comma-separated integers, got {text!r}")


class WorkbenchCommand(BaseCommand):
    """
    A management command with --format and --budget-seconds.

    Subclasses implement run(**options); WorkbenchError and ValidationError
    raised there become CommandError.
    """

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            choices=OutputFormat.values,
            default=OutputFormat.TABLE,
            help='Output format',
        )
        parser.add_argument(
            '--budget-seconds',
            type=int,
            default=None,
            help='Wall-clock budget for long computations (0 for none)',
        )

    def handle(self, *args, **options):
        self.format = options['format']
        started = time.monotonic()
        try:
            validate_budget_seconds(options['budget_seconds'])
            self.run(*args, **options)
        except (WorkbenchError, ValidationError) as exc:
            logger.error(f"{self.__module__.rsplit('.', 1)[-1]} failed: {error_text(exc)}")
            raise CommandError(error_text(exc)) from exc
        logger.debug(f"{self.__module__} finished in {time.monotonic() - started:.2f}s")

    def run(self, *args, **options):
        raise NotImplementedError

    def table(self, headers, rows):
        self.stdout.write(render_table(headers, rows, self.format), ending='')

    def title(self, text):
        if self.format == OutputFormat.TABLE:
            self.stdout.write(banner(text), ending='')
