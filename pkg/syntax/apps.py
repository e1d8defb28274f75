from django.apps import AppConfig


class SyntaxConfig(AppConfig):
    name = 'syntax'
    verbose_name = 'First-order syntax and normal forms'
