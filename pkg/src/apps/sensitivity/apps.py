from django.apps import AppConfig


class SensitivityConfig(AppConfig):
    name = 'apps.sensitivity'
    verbose_name = 'Worst-case optimal-value derivatives'
