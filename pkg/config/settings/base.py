"""
Base Django settings for the cohomology workbench project.
Contains common settings shared across all environments.
"""

from pathlib import Path
from decouple import config, Csv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-workbench-local-only-5c1f0e7d2b9a')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=Csv())


# Application definition

DJANGO_APPS = [
    'django.contrib.contenttypes',
]

THIRD_PARTY_APPS = []

LOCAL_APPS = [
    'apps.core',
    'apps.exactlin',
    'apps.groupkit',
    'apps.repfun',
    'apps.cochain',
    'apps.foxone',
    'apps.specseq',
    'apps.tdual',
    'apps.chern16',
    'apps.workbench',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS


# Database
# Only the test runner touches it; the workbench itself stores nothing.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / config('DB_NAME', default='workbench.sqlite3'),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = config('TIME_ZONE', default='UTC')

USE_I18N = True

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Exact linear algebra
EXACTLIN_MAX_SMITH_COLUMNS = config('EXACTLIN_MAX_SMITH_COLUMNS', default=4000, cast=int)
EXACTLIN_MAX_ENTRY_BITS = config('EXACTLIN_MAX_ENTRY_BITS', default=62, cast=int)

# Group tables
GROUPKIT_MAX_TABLE_ORDER = config('GROUPKIT_MAX_TABLE_ORDER', default=4096, cast=int)
GROUPKIT_EXHAUSTIVE_ORDER = config('GROUPKIT_EXHAUSTIVE_ORDER', default=64, cast=int)
GROUPKIT_ASSOCIATIVITY_SAMPLES = config(
    'GROUPKIT_ASSOCIATIVITY_SAMPLES', default=100000, cast=int
)

# Representations
REPFUN_SPOT_CHECK_PAIRS = config('REPFUN_SPOT_CHECK_PAIRS', default=10000, cast=int)

# Bar cochains
COCHAIN_MAX_CELLS = config('COCHAIN_MAX_CELLS', default=10 ** 7, cast=int)
COCHAIN_U1_MAX_ORDER = config('COCHAIN_U1_MAX_ORDER', default=16, cast=int)
COCHAIN_U1_FAST_ORDER = config('COCHAIN_U1_FAST_ORDER', default=8, cast=int)
COCHAIN_STREAM_VERIFY = config('COCHAIN_STREAM_VERIFY', default=True, cast=bool)

# Workbench front end
WORKBENCH_BUDGET_SECONDS = config('WORKBENCH_BUDGET_SECONDS', default=600, cast=int)
WORKBENCH_RANDOM_SEED = config('WORKBENCH_RANDOM_SEED', default=20240601, cast=int)
WORKBENCH_DATA_DIR = Path(
    config('WORKBENCH_DATA_DIR', default=str(BASE_DIR / 'apps' / 'workbench' / 'data'))
)


# Logging Configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'INFO',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
        'file': {
            'level': 'INFO',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': BASE_DIR / 'logs' / 'workbench.log',
            'maxBytes': 1024 * 1024 * 10,  # 10 MB
            'backupCount': 5,
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
        'apps': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}
