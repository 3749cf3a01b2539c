from django.apps import AppConfig


class AlgebraConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "algebra"
    verbose_name = "Hopf algebras of decorated rooted forests"

    def ready(self):
        # Registers the symbolic verification suites
        from . import suites  # noqa: F401
