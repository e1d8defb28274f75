from pathlib import Path
import os

from decouple import config
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='interpoleez-local-only-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'rest_framework',
    'syntax.apps.SyntaxConfig',
    'tableaux.apps.TableauxConfig',
    'interpolation.apps.InterpolationAppConfig',
    'ressim.apps.RessimConfig',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# No persistence: every command works on files and standard streams
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Serializers are used for the JSON exchange formats only
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
}

# Interpolation defaults
IPOL_SIDE_POLICY = config('IPOL_SIDE_POLICY', default='prefer-F')
IPOL_GROUNDING = config('IPOL_GROUNDING', default='least-constant')
IPOL_TARGET_POLICY = config('IPOL_TARGET_POLICY', default='nearest')
IPOL_C0_SIDE = config('IPOL_C0_SIDE', default='F')
IPOL_SIMPLIFY = config('IPOL_SIMPLIFY', default=True, cast=bool)
IPOL_VERIFY = config('IPOL_VERIFY', default=False, cast=bool)

# Prover limits and policy
IPOL_MAX_DEPTH = config('IPOL_MAX_DEPTH', default=12, cast=int)
IPOL_TIMEOUT_MS = config('IPOL_TIMEOUT_MS', default=10000, cast=int)
IPOL_MAX_INFERENCES = config('IPOL_MAX_INFERENCES', default=2000000, cast=int)
IPOL_START_CLAUSES = config('IPOL_START_CLAUSES', default='from-G')
IPOL_REGULARITY = config('IPOL_REGULARITY', default=True, cast=bool)

# Equality as an ordinary predicate plus axioms
IPOL_EQUALITY = config('IPOL_EQUALITY', default=False, cast=bool)
IPOL_EQUALITY_PLACEMENT = config('IPOL_EQUALITY_PLACEMENT', default='auto')

# Truth-table oracle scale bound (distinct ground atoms)
IPOL_TRUTH_TABLE_ATOMS = config('IPOL_TRUTH_TABLE_ATOMS', default=20, cast=int)

IPOL_LOG_LEVEL = config('IPOL_LOG_LEVEL', default='INFO')

LOG_DIR = os.path.join(BASE_DIR, 'logs')
if not os.path.exists(LOG_DIR):
    os.makedirs(LOG_DIR)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
        'file': {
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': os.path.join(LOG_DIR, 'interpolation.log'),
            'formatter': 'verbose',
            'maxBytes': 1024 * 1024 * 10,  # 10 MB
            'backupCount': 5,
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
        'syntax': {
            'handlers': ['console', 'file'],
            'level': IPOL_LOG_LEVEL,
            'propagate': False,
        },
        'tableaux': {
            'handlers': ['console', 'file'],
            'level': IPOL_LOG_LEVEL,
            'propagate': False,
        },
        'interpolation': {
            'handlers': ['console', 'file'],
            'level': IPOL_LOG_LEVEL,
            'propagate': False,
        },
        'ressim': {
            'handlers': ['console', 'file'],
            'level': IPOL_LOG_LEVEL,
            'propagate': False,
        },
        '': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
