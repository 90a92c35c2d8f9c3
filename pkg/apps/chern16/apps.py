from django.apps import AppConfig


class Chern16Config(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.chern16'
