import os
from pathlib import Path

from blowuplab.settings import get_secret

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent


# Application definition

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    "core",
    "spectral",
    "bounds",
    "detwave",
    "spde",
    "montecarlo",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "blowuplab.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Static files (admin only)

STATIC_URL = "/static/"

STATIC_ROOT = BASE_DIR / "staticfiles"

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# ───────────────────────────────────────────────
# Lab defaults
# ───────────────────────────────────────────────

BLOWUPLAB = {
    "QUAD_RTOL": float(get_secret("BLOWUPLAB_QUAD_RTOL", 1e-8)),
    "ODE_CAP": float(get_secret("BLOWUPLAB_ODE_CAP", 1e6)),
    "ODE_DT": float(get_secret("BLOWUPLAB_ODE_DT", 1e-2)),
    "ODE_STEP_FRACTION": float(get_secret("BLOWUPLAB_ODE_STEP_FRACTION", 1e-2)),
    "MAX_HALVINGS": int(get_secret("BLOWUPLAB_MAX_HALVINGS", 20)),
    "WORKERS": int(get_secret("BLOWUPLAB_WORKERS", os.cpu_count() or 1)),
    "OUTPUT_DIR": get_secret("BLOWUPLAB_OUTPUT_DIR", "runs"),
}


# ───────────────────────────────────────────────
# Logging
# ───────────────────────────────────────────────

LOG_LEVEL = get_secret("LOG_LEVEL", "INFO")

LAB_APPS = ("core", "spectral", "bounds", "detwave", "spde", "montecarlo")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in LAB_APPS
    },
}
