"""
Django settings for the boundary_qbm project.

The project hosts a single app, ``dispersion``, which evaluates the
vacuum-induced velocity and position dispersions of a test particle near a
point-like Dirichlet boundary. There are no models and no database: the
settings below only configure the CLI, the read-only API and logging.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-boundary-qbm-local-development-key',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('DJANGO_DEBUG', '1') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # django apps
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # third party apps
    'rest_framework',                       # DRF

    # user created apps
    'dispersion.apps.DispersionConfig',     # dispersion app
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'boundary_qbm.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'boundary_qbm.wsgi.application'


# Database
# Nothing is persisted beyond flat files written by the CLI.

DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


STATIC_URL = 'static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Django REST framework
# The API is read-only and anonymous; no session or auth backends are needed.

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}


# Dispersion app
# Read through dispersion.conf.dispersion_settings; every key is optional.

DISPERSION = {
    'QUADRATURE': {
        'abs_tol': 1e-9,
        'rel_tol': 1e-9,
        'max_subdivisions': 500,
    },
    'ORACLE_QUADRATURE': {
        'abs_tol': 1e-13,
        'rel_tol': 1e-12,
        'max_subdivisions': 800,
    },
    'FINITE_DIFFERENCE_STEP': 1e-3,
    'SMEARING_N_SIGMA': 8.0,
    'SERIES_TOLERANCE': 1e-15,
    'SERIES_MAX_TERMS': 2000,
    'SERIES_Z_ENVELOPE': 50.0,
    'SWEEP_WORKERS': int(os.environ.get('DISPERSION_SWEEP_WORKERS', '4')),
    'SINGULAR_ULPS': 4,
}


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'dispersion': {
            'handlers': ['console'],
            'level': os.environ.get('DISPERSION_LOG_LEVEL', 'WARNING'),
            'propagate': True,
        },
    },
}
