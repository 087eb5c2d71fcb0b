from django.apps import AppConfig


class HamiltonicityConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hamiltonicity'
