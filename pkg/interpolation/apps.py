from django.apps import AppConfig


class InterpolationAppConfig(AppConfig):
    name = 'interpolation'
    verbose_name = 'Craig-Lyndon interpolation'
