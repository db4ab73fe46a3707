from pathlib import Path
from decouple import config, Csv

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='lpsens-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='', cast=Csv())

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # Third party apps
    'rest_framework',

    # Local apps
    'apps.core_lp',
    'apps.lp_forms',
    'apps.interval_lp',
    'apps.sensitivity',
    'apps.oracle',
    'apps.io_cli',
]

# Nothing is persisted; reports go to stdout or JSON files.
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}


# Solver configuration
LPSENS_THREADS = config('LPSENS_THREADS', default=1, cast=int)
LPSENS_BACKEND = config('LPSENS_BACKEND', default='float')

LPSENS_DEGENERACY_TOL = config('LPSENS_DEGENERACY_TOL', default=1e-7, cast=float)
LPSENS_FEASIBILITY_TOL = config('LPSENS_FEASIBILITY_TOL', default=1e-9, cast=float)
LPSENS_PIVOT_TOL = config('LPSENS_PIVOT_TOL', default=1e-9, cast=float)
LPSENS_CONDITION_LIMIT = config('LPSENS_CONDITION_LIMIT', default=1e12, cast=float)
LPSENS_REFACTOR_EVERY = config('LPSENS_REFACTOR_EVERY', default=50, cast=int)
LPSENS_MAX_ITERATIONS = config('LPSENS_MAX_ITERATIONS', default=50000, cast=int)

# Sensitivity configuration
LPSENS_BASIS_CAP = config('LPSENS_BASIS_CAP', default=1000, cast=int)
LPSENS_MAX_SIGN_ROWS = config('LPSENS_MAX_SIGN_ROWS', default=20, cast=int)
LPSENS_ORACLE_AUTO_ROWS = config('LPSENS_ORACLE_AUTO_ROWS', default=12, cast=int)
LPSENS_ORACLE_ALPHAS = config(
    'LPSENS_ORACLE_ALPHAS',
    default='1e-2,1e-3,1e-4',
    cast=Csv(cast=float),
)
LPSENS_AGREEMENT_TOL = config('LPSENS_AGREEMENT_TOL', default=1e-3, cast=float)

LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

# Redis Configuration
REDIS_HOST = config('REDIS_HOST', default='localhost', cast=str)
REDIS_PORT = config('REDIS_PORT', default=6379, cast=int)
REDIS_DB = config('REDIS_DB', default=0, cast=int)
REDIS_URL = f'redis://{REDIS_HOST}:{REDIS_PORT}/{REDIS_DB}'

# Celery Configuration
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default=REDIS_URL)
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default=REDIS_URL)
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 30 * 60
