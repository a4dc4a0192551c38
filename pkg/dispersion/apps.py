from django.apps import AppConfig


class DispersionConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'dispersion'
    verbose_name = 'Boundary-induced dispersions'
