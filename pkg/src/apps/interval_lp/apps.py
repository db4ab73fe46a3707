from django.apps import AppConfig


class IntervalLpConfig(AppConfig):
    name = 'apps.interval_lp'
    verbose_name = 'Interval LP optimal-value range'
