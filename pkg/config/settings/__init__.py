"""
Settings package for the cohomology workbench project.

DJANGO_ENV picks the module: production for unattended reproduce runs, test for
the pytest settings, development otherwise.
"""

import os

env = os.getenv('DJANGO_ENV', 'development')

if env == 'production':
    from .production import *
elif env == 'test':
    from .test import *
else:
    from .development import *
