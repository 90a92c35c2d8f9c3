from django.apps import AppConfig


class GroupkitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.groupkit'
