"""
Production settings for the cohomology workbench project.
Used for unattended batch runs of the reproduce suites on a compute host.
"""

from .base import *

# Debug MUST be False in production
DEBUG = False

# Unattended runs may take the long-running items; give them room
WORKBENCH_BUDGET_SECONDS = config('WORKBENCH_BUDGET_SECONDS', default=1800, cast=int)

# The final verification pass over streamed rows is never skipped here
COCHAIN_STREAM_VERIFY = True


# Logging - keep the console quiet, keep the file complete
LOGGING['handlers']['console']['level'] = 'WARNING'
LOGGING['handlers']['file']['level'] = 'INFO'
LOGGING['loggers']['django']['level'] = 'WARNING'
LOGGING['loggers']['apps']['level'] = 'INFO'
