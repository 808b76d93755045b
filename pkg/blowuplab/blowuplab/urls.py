"""
URL configuration for the blowuplab project.

Only the admin site is routed; it is used to browse recorded Monte Carlo
campaigns. Everything else in the lab runs through management commands.
"""

from django.contrib import admin
from django.urls import path

urlpatterns = [
    path("admin/", admin.site.urls),
]
