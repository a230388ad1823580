from django.apps import AppConfig


class RelaxationConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'relaxation'
    verbose_name = 'LP relaxation for minimum weight k-trails'
