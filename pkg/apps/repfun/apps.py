from django.apps import AppConfig


class RepfunConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.repfun'
