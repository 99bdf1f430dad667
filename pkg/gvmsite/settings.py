from pathlib import Path
from decouple import config


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# The engine never serves requests; the key only satisfies Django's startup checks.
SECRET_KEY = config("SECRET_KEY", default="gvm-offline-engine")
DEBUG = config("DEBUG", default=False, cast=bool)
ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # Local apps
    'gvm',
]

# Exact computations only; nothing is persisted.
DATABASES = {}

USE_I18N = False
USE_TZ = True

# Engine settings
# Directory holding the LaTeX golden tables.
GVM_GOLDENS_DIR = BASE_DIR / 'gvm' / 'goldens'

# JSON Schema files describing the `--format json` payloads.
GVM_SCHEMAS_DIR = BASE_DIR / 'gvm' / 'schemas'

# Upper bound on |W(Θ)| and |W_Θ| for brute-force Weyl enumeration (existence checks, orbits).
# Fixed so that results depend on argv alone; `--limit` replaces it per run.
GVM_WEYL_ENUMERATION_LIMIT = 100000

# Logging
LOG_LEVEL = config("LOG_LEVEL", default="WARNING")

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
    'loggers': {
        'gvm': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
