from .base import *
from dotenv import load_dotenv

load_dotenv(BASE_DIR / "blowuplab" / "settings" / ".env")

DEBUG = True
ALLOWED_HOSTS = [
    "localhost",
    "127.0.0.1",
]

SECRET_KEY = "django-insecure-blowuplab-dev-only-key-do-not-deploy"

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

# No broker in development: campaigns dispatched with --queue run in-process.
CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True

for _logger in LOGGING["loggers"].values():
    _logger["level"] = get_secret("LOG_LEVEL", "DEBUG")
