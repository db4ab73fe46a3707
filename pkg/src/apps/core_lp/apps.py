from django.apps import AppConfig


class CoreLpConfig(AppConfig):
    name = 'apps.core_lp'
    verbose_name = 'Core LP solver'

    def ready(self):
        # Library code logs through loguru; its default sink would print DEBUG.
        from config.logging import configure_logging

        configure_logging()
