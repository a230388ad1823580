"""
Django settings for KTrails project.

Generated by 'django-admin startproject' using Django 4.2.13.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""
from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='ktrails-local-development-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'trails',
    'relaxation',
]

# Serializers only; no request handling reaches the auth framework
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
}

# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases
# Nothing is persisted; the entry only keeps Django's machinery satisfied.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('DATABASE_NAME', default=str(BASE_DIR / 'db.sqlite3')),
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

KTRAILS_LOG_LEVEL = config('KTRAILS_LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'trails': {
            'handlers': ['console'],
            'level': KTRAILS_LOG_LEVEL,
        },
        'relaxation': {
            'handlers': ['console'],
            'level': KTRAILS_LOG_LEVEL,
        },
    },
}


# Exhaustive oracles refuse inputs above these sizes
ORACLE_MAX_EDGES = config('ORACLE_MAX_EDGES', default=16, cast=int)
ORACLE_MAX_TREE_VERTICES = config('ORACLE_MAX_TREE_VERTICES', default=16, cast=int)

# Forest separation: exhaustive search up to this many aux vertices, min-cut above
SEPARATION_EXHAUSTIVE_LIMIT = config('SEPARATION_EXHAUSTIVE_LIMIT', default=20, cast=int)

# Assert full column rank of the tight rows at each final LP solution
LP_CHECK_VERTEX = config('LP_CHECK_VERTEX', default=True, cast=bool)


# Celery (batch recognition)

CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='memory://')
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default='cache+memory://')
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'


# Acceptance-scale test suites (gap instance oracles, larger exhaustive sweeps)
KTRAILS_SLOW_TESTS = config('KTRAILS_SLOW_TESTS', default=False, cast=bool)
