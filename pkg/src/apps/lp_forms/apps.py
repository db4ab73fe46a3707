from django.apps import AppConfig


class LpFormsConfig(AppConfig):
    name = 'apps.lp_forms'
    verbose_name = 'LP forms and perturbation patterns'
