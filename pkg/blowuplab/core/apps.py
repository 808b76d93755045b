"""
@file core/apps.py
@brief Django app configuration for the 'core' app.

@details
The core app owns the command-line surface of the lab: run configuration
parsing, the shared exception hierarchy and artifact writers.
"""

from django.apps import AppConfig


class CoreConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "core"
