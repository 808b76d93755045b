from .base import *
from blowuplab.settings import get_secret

SECRET_KEY = get_secret("SECRET_KEY")

DEBUG = False
raw_hosts = get_secret("ALLOWED_HOSTS", "")
ALLOWED_HOSTS = [host.strip() for host in raw_hosts.split(",") if host.strip()]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases
DATABASES = {
    "default": {
        'ENGINE': f"django.db.backends.{get_secret('DATABASE_ENGINE', 'sqlite3')}",
        'NAME': get_secret("DATABASE_NAME", BASE_DIR / "db.sqlite3"),
        'USER': get_secret("DATABASE_USERNAME", ''),
        'PASSWORD': get_secret('DATABASE_PASSWORD', ''),
        'HOST': get_secret('DATABASE_HOST', ''),
        'PORT': get_secret("DATABASE_PORT", ''),
    }
}

CELERY_BROKER_URL = f"{get_secret('REDIS_BROKER', 'redis://localhost:6379/0')}"
CELERY_RESULT_BACKEND = get_secret("REDIS_RESULTS", CELERY_BROKER_URL)
