from django.apps import AppConfig


class OracleConfig(AppConfig):
    name = 'apps.oracle'
    verbose_name = 'Finite-difference oracle'
