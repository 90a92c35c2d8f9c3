from django.apps import AppConfig


class SpecseqConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.specseq'
