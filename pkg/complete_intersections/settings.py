"""
Django settings for complete_intersections project.

Generated by 'django-admin startproject' using Django 5.2.7.

El proyecto no sirve páginas web: expone los cálculos como comandos de
administración (``python manage.py sd|classify|rigidity|search|ledger``).

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-ci-8w1t#r5n0^k$7c@2p(qv=hz!y4d6g_x3m9s&l+ea',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('DJANGO_DEBUG', 'False').lower() in ('1', 'true', 'yes')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'intersections',
]

MIDDLEWARE = []

# Sin modelos: no hace falta base de datos.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'es'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Configuración de la app de intersecciones completas.
# Cada valor se puede sobreescribir con variables de entorno (ver docker-compose.yml).

INTERSECTIONS = {
    # Límite de multigrados enumerados antes de abortar una búsqueda.
    'SEARCH_LIMIT': int(os.environ.get('CI_SEARCH_LIMIT', '200000')),
    'SEARCH_WORKERS': int(os.environ.get('CI_SEARCH_WORKERS', '4')),
    # 'thread' o 'process'
    'SEARCH_EXECUTOR': os.environ.get('CI_SEARCH_EXECUTOR', 'thread'),
    'LEDGER_PATH': os.environ.get(
        'CI_LEDGER_PATH',
        str(BASE_DIR / 'intersections' / 'data' / 'bordism_ledger.json'),
    ),
    'MAX_LITERAL_TERMS': int(os.environ.get('CI_MAX_LITERAL_TERMS', '1000000')),
}


# Logging
# Todo va a stderr: stdout queda reservado para los registros JSON.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'intersections': {
            'handlers': ['console'],
            'level': os.environ.get('CI_LOG_LEVEL', 'WARNING').upper(),
            'propagate': False,
        },
    },
}
