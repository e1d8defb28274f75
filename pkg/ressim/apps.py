from django.apps import AppConfig


class RessimConfig(AppConfig):
    name = 'ressim'
    verbose_name = 'Resolution proof simulation'
