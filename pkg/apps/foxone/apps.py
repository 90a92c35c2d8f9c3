from django.apps import AppConfig


class FoxoneConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.foxone'
