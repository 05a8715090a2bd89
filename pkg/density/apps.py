from django.apps import AppConfig


class DensityConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'density'
