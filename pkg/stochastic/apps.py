from django.apps import AppConfig


class StochasticConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "stochastic"
    verbose_name = "Branched rough paths over 1/4-fractional Brownian motion"

    def ready(self):
        # Registers the Monte Carlo verification suites
        from . import suites  # noqa: F401
