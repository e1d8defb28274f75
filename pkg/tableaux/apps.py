from django.apps import AppConfig


class TableauxConfig(AppConfig):
    name = 'tableaux'
    verbose_name = 'Clausal tableaux, proof search and extraction'
