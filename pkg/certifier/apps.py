from django.apps import AppConfig


class CertifierConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'certifier'
