"""
Django settings for the Spectre Hamiltonien project.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-dev-key-change-in-production')

DEBUG = os.getenv('DEBUG', 'True') == 'True'

ALLOWED_HOSTS = ['localhost', '127.0.0.1', 'testserver']
# Render injecte RENDER_EXTERNAL_HOSTNAME automatiquement
render_hostname = os.getenv('RENDER_EXTERNAL_HOSTNAME')
if render_hostname:
    ALLOWED_HOSTS.append(render_hostname)
# Permet d'ajouter des domaines custom via variable d'env
extra_hosts = os.getenv('ALLOWED_HOSTS_EXTRA', '')
if extra_hosts:
    ALLOWED_HOSTS.extend([h.strip() for h in extra_hosts.split(',')])


INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'graphs',
    'spectral',
    'hamiltonicity',
    'certifier',
    'verification',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'backend.urls'

WSGI_APPLICATION = 'backend.wsgi.application'

# L'API est sans état : aucune table applicative, SQLite suffit pour les apps contrib.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

LANGUAGE_CODE = 'fr-fr'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Paramètres numériques du moteur (tolérances, limites de recherche exacte)
HAMCHECK = {
    'SOLVER_TOL': float(os.getenv('HAMCHECK_SOLVER_TOL', '1e-9')),
    'AGREEMENT_TOL': float(os.getenv('HAMCHECK_AGREEMENT_TOL', '1e-8')),
    'GUARD_BAND': float(os.getenv('HAMCHECK_GUARD_BAND', '1e-9')),
    'DENSE_LIMIT': int(os.getenv('HAMCHECK_DENSE_LIMIT', '512')),
    'POWER_MAX_ITER': int(os.getenv('HAMCHECK_POWER_MAX_ITER', '200000')),
    'DP_LIMIT': int(os.getenv('HAMCHECK_DP_LIMIT', '22')),
    'BIPARTITE_DP_LIMIT': int(os.getenv('HAMCHECK_BIPARTITE_DP_LIMIT', '24')),
    'DESK_LIMIT': int(os.getenv('HAMCHECK_DESK_LIMIT', '14')),
    'BIPARTITE_DESK_LIMIT': int(os.getenv('HAMCHECK_BIPARTITE_DESK_LIMIT', '20')),
    'SPOT_VALIDATE': os.getenv('HAMCHECK_SPOT_VALIDATE', 'True') == 'True',
    'SEARCH_BUDGET': int(os.getenv('HAMCHECK_SEARCH_BUDGET', '50000000')),
    'CUT_SEARCH_BUDGET': int(os.getenv('HAMCHECK_CUT_SEARCH_BUDGET', '200000')),
}

# Security Hardening
if not DEBUG:
    SECURE_CONTENT_TYPE_NOSNIFF = True
    SECURE_HSTS_SECONDS = 31536000  # 1 year
    SECURE_HSTS_INCLUDE_SUBDOMAINS = True
    SECURE_SSL_REDIRECT = os.getenv('SECURE_SSL_REDIRECT', 'True') == 'True'

# Logging configuration
HAMCHECK_LOG_LEVEL = os.getenv('HAMCHECK_LOG_LEVEL', 'INFO')

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
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        'graphs': {
            'handlers': ['console'],
            'level': HAMCHECK_LOG_LEVEL,
            'propagate': False,
        },
        'spectral': {
            'handlers': ['console'],
            'level': HAMCHECK_LOG_LEVEL,
            'propagate': False,
        },
        'hamiltonicity': {
            'handlers': ['console'],
            'level': HAMCHECK_LOG_LEVEL,
            'propagate': False,
        },
        'certifier': {
            'handlers': ['console'],
            'level': HAMCHECK_LOG_LEVEL,
            'propagate': False,
        },
        'verification': {
            'handlers': ['console'],
            'level': HAMCHECK_LOG_LEVEL,
            'propagate': False,
        },
    },
}
