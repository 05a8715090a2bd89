"""
URL configuration for the zimin_lab project.
Only the admin is mounted, for browsing recorded runs.
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
