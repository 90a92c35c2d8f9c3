#!/usr/bin/env python
"""Entry point for the workbench management commands (verify_presentation, reproduce, ...)."""
import os
import sys
from pathlib import Path


def main():
    """Run a workbench or Django management command."""
    # The file handler in LOGGING writes to BASE_DIR / 'logs'; it must exist
    # before Django configures logging.
    try:
        (Path(__file__).resolve().parent / 'logs').mkdir(parents=True, exist_ok=True)
    except OSError:
        # Read-only checkout: Django reports the unusable log file itself.
        pass

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install requirements/development.txt "
            "into the active environment first."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
