"""
Shared base class for the CLI verbs.

Every verb is a management command taking a positional action, optional
expression arguments and the global flags. Library errors are translated
into ``CommandError`` with the documented exit codes.
"""

import logging

from django.core.management.base import BaseCommand, CommandError

from .config import RunConfig, bound_scope
from .constants import EXIT_ASSERTION_FAILED, EXIT_USAGE, OUTPUT_FORMATS
from .exceptions import (
    AlphabetMismatchError,
    BoundExceededError,
    BranchedError,
    ConfigurationError,
    ExpressionParseError,
    GridError,
    UnknownLabelError,
)
from .utils import ReportHelper

logger = logging.getLogger(__name__)

USAGE_ERRORS = (
    AlphabetMismatchError,
    BoundExceededError,
    ConfigurationError,
    ExpressionParseError,
    GridError,
    UnknownLabelError,
)


class BranchedCommand(BaseCommand):
    """
    Base for the verbs. Subclasses set ``actions`` and implement
    ``run_action``; extra flags go in ``add_command_arguments``.
    """

    actions: tuple[str, ...] = ()

    def add_arguments(self, parser):
        parser.add_argument("action", choices=self.actions, help="What to compute")
        parser.add_argument(
            "expressions",
            nargs="*",
            help="Expressions, e.g. \"[] [[]]\", \"pi([] [])\" or \"[] | []\"",
        )
        parser.add_argument(
            "--format",
            dest="output_format",
            choices=[code for code, _ in OUTPUT_FORMATS],
            help="Output format",
        )
        parser.add_argument("--bound", type=int, help="Truncation bound (at most 6)")
        parser.add_argument("--seed", type=int, help="Master seed")
        parser.add_argument("--tol", type=float, help="Numerical tolerance")
        parser.add_argument("--alphabet", help="Comma separated vertex labels")
        parser.add_argument("--config", dest="config_file", help="KEY=value config file")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run_action(self, action: str, options: dict, config: RunConfig):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            config = RunConfig.load(
                options.get("config_file"),
                bound=options.get("bound"),
                seed=options.get("seed"),
                tol=options.get("tol"),
                alphabet=options.get("alphabet"),
                output_format=options.get("output_format"),
                **self.config_overrides(options),
            )
        except ConfigurationError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        self.config = config
        logger.debug(f"{self.__module__} {options['action']} with {config}")
        try:
            with bound_scope(config.bound):
                self.run_action(options["action"], options, config)
        except USAGE_ERRORS as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except BranchedError as e:
            raise CommandError(str(e), returncode=EXIT_ASSERTION_FAILED)

    def config_overrides(self, options: dict) -> dict:
        return {}

    # -- helpers ---------------------------------------------------------

    def require(self, expressions: list[str], count: int | None = None) -> list[str]:
        """Check the number of expression arguments."""
        if not expressions or (count is not None and len(expressions) != count):
            wanted = "at least one" if count is None else str(count)
            raise CommandError(f"Expected {wanted} expression argument(s)", returncode=EXIT_USAGE)
        return expressions

    def emit(self, payload):
        if self.config.output_format == "json" and not isinstance(payload, str):
            self.stdout.write(ReportHelper.dumps(payload))
        else:
            self.stdout.write(str(payload))

    def fail(self, message: str):
        raise CommandError(message, returncode=EXIT_ASSERTION_FAILED)

    def report_suites(self, results: dict[str, dict]) -> None:
        """Write one line per suite (or the JSON report) and fail on any failure."""
        if self.config.output_format == "json":
            self.stdout.write(ReportHelper.dumps({"suites": results}))
        else:
            for name, result in results.items():
                line = ReportHelper.suite_line(name, result)
                style = self.style.SUCCESS if result["passed"] else self.style.ERROR
                self.stdout.write(style(line))
                for error in result["errors"]:
                    self.stdout.write(f"  error: {error}")
                for warning in result["warnings"]:
                    self.stdout.write(self.style.WARNING(f"  warning: {warning}"))
        failed = [name for name, result in results.items() if not result["passed"]]
        if failed:
            self.fail(f"Failed suites: {', '.join(failed)}")
