from django.apps import AppConfig


class AsymptoticsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'asymptotics'
