from django.apps import AppConfig


class DebruijnConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'debruijn'
