from django.apps import AppConfig


class IoCliConfig(AppConfig):
    name = 'apps.io_cli'
    verbose_name = 'Input, output and command line'
