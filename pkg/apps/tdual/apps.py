from django.apps import AppConfig


class TdualConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.tdual'
