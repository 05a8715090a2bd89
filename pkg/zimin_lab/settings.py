from pathlib import Path
import environ


env = environ.Env(
    DEBUG=(bool, False),
    CELERY_EAGER=(bool, True),
    ZIMIN_RECORD_RUNS=(bool, False),
    ZIMIN_PROGRESS=(bool, False),
)

BASE_DIR = Path(__file__).resolve().parent.parent

# Read .env file only if it exists (for local development)
env_file = BASE_DIR / '.env'
if env_file.exists():
    environ.Env.read_env(env_file)

# Nothing is served; the key only satisfies Django's startup checks.
SECRET_KEY = env('SECRET_KEY', default='zimin-lab-local-only')
DEBUG = env('DEBUG')

ALLOWED_HOSTS = ['localhost', '127.0.0.1']

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'django.contrib.admin',
    'django.contrib.sessions',
    'django.contrib.messages',
    'rest_framework',
    'words',
    'patterns',
    'avoidance',
    'density',
    'asymptotics',
    'debruijn',
    'ledger',
    'cli',
]

MIDDLEWARE = [
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
]

ROOT_URLCONF = 'zimin_lab.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

DATABASES = {
    'default': env.db('DATABASE_URL', default=f'sqlite:///{BASE_DIR / "db.sqlite3"}'),
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
    'EXCEPTION_HANDLER': 'zimin_lab.exceptions.custom_exception_handler',
}

# Computation defaults. Every CLI flag and task argument falls back to these.
ZIMIN = {
    'SEARCH_NODE_BUDGET': env.int('ZIMIN_NODE_BUDGET', default=10**9),
    'ENUMERATION_BUDGET': env.int('ZIMIN_ENUM_BUDGET', default=2**24),
    'TETRATION_DIGIT_CAP': env.int('ZIMIN_TETRATION_DIGITS', default=4000),
    'DEFAULT_SEED': env.int('ZIMIN_SEED', default=7),
    'SPLIT_DEPTH': env.int('ZIMIN_SPLIT_DEPTH', default=8),
    'THREADS': env.int('ZIMIN_THREADS', default=1),
    'ENCLOSURE_BITS': env.int('ZIMIN_ENCLOSURE_BITS', default=256),
    'IZ3_N': 30,
    'IZ3_M': 5,
    'IZN_TRUNCATION_BASE': 20,
    'RESTARTS': env.int('ZIMIN_RESTARTS', default=64),
    'LONG_AVOIDER_BACKTRACK': 24,
    'RECORD_RUNS': env('ZIMIN_RECORD_RUNS'),
    'PROGRESS': env('ZIMIN_PROGRESS'),
}

# Celery Configuration
# Eager by default so a desk run needs no broker; point CELERY_BROKER_URL at
# redis and set CELERY_EAGER=False to fan subtree and restart tasks out.
CELERY_BROKER_URL = env('CELERY_BROKER_URL', default='redis://localhost:6379/0')
CELERY_RESULT_BACKEND = env('CELERY_RESULT_BACKEND', default='redis://localhost:6379/0')
CELERY_TASK_ALWAYS_EAGER = env('CELERY_EAGER')
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_WORKER_CONCURRENCY = ZIMIN['THREADS']

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        name: {
            'handlers': ['console'],
            'level': env('ZIMIN_LOG_LEVEL', default='INFO'),
            'propagate': False,
        }
        for name in (
            'zimin_lab', 'words', 'patterns', 'avoidance', 'density',
            'asymptotics', 'debruijn', 'ledger', 'cli',
        )
    },
}
