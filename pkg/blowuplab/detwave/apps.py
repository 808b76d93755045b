from django.apps import AppConfig


class DetwaveConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "detwave"
