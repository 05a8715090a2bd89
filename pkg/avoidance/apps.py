from django.apps import AppConfig


class AvoidanceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'avoidance'
