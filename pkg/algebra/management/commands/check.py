import json
from pathlib import Path

from django.core.management.base import CommandError

from algebra.services import morphisms
from algebra.services.expressions import parse_character
from common.commands import BranchedCommand
from common.constants import EXIT_USAGE


class Command(BranchedCommand):
    help = "Test a character for multiplicativity and (quasi-)geometricity"

    actions = ("quasi-geometric", "geometric", "multiplicative")

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--character",
            required=True,
            help="JSON file {\"values\": {forest: value}, \"interval\": [s, t]}",
        )

    def run_action(self, action, options, config):
        path = Path(options["character"])
        if not path.exists():
            raise CommandError(f"Character file not found: {path}", returncode=EXIT_USAGE)
        try:
            payload = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise CommandError(f"Invalid character file: {e}", returncode=EXIT_USAGE)
        character = parse_character(payload, config.alphabet)

        if action == "multiplicative":
            defects = character.multiplicativity_defects(config.tol)
            self._verdict(not defects, [f"{code}: {gap:.6g}" for code, gap in defects])
            return

        result = morphisms.check_character(
            character, config.alphabet, config.tol, geometric=action == "geometric"
        )
        witnesses = [f"{name}: {float(value):.6g}" for name, value in result["witnesses"]]
        self._verdict(result["verdict"], witnesses, result["checked"])

    def _verdict(self, passed: bool, witnesses: list[str], checked: int | None = None):
        if self.config.output_format == "json":
            self.emit({"verdict": passed, "witnesses": witnesses, "checked": checked})
        else:
            if checked is not None:
                self.emit(f"checked {checked} obstructions")
            for witness in witnesses:
                self.emit(witness)
            style = self.style.SUCCESS if passed else self.style.ERROR
            self.stdout.write(style("PASS" if passed else "FAIL"))
        if not passed:
            self.fail("Character failed the check")
