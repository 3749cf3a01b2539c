import json
from pathlib import Path

from django.core.management.base import CommandError

from algebra.services import order4
from algebra.services.expressions import parse_expression
from common.commands import BranchedCommand
from common.config import bound_scope
from common.constants import EXIT_USAGE


class Command(BranchedCommand):
    help = "Order-4 bases, generator rewrites and character extension (d=1)"

    actions = ("basis", "rewrite", "extend", "generators", "identities")

    def add_command_arguments(self, parser):
        parser.add_argument("--gens", help="extend: JSON file mapping generator names to values")
        parser.add_argument(
            "--interval", nargs=2, type=float, metavar=("S", "T"), default=(0.0, 0.0)
        )

    def run_action(self, action, options, config):
        fmt = config.output_format

        if action == "basis":
            report = order4.basis_P4_Q3()
            if fmt == "json":
                self.emit(report)
            else:
                self.emit(f"P^4 (rank {report['p_rank']}): " + ", ".join(report["P"]))
                self.emit(f"Q^3 (rank {report['q_rank']}): " + ", ".join(report["Q"]))
            return

        if action == "generators":
            rows = [{"index": g.index, "name": g.name, "weight": g.weight} for g in order4.generators()]
            if fmt == "json":
                self.emit(rows)
            else:
                for row in rows:
                    self.emit(f"X{row['index'] + 1} (weight {row['weight']}): {row['name']}")
            return

        if action == "identities":
            results = order4.check_reference_identities()
            cherry = order4.cherry_pair_identity()
            if fmt == "json":
                self.emit({"identities": results, "cherry_pair": cherry["holds"]})
            else:
                for tree, holds in results.items():
                    self.emit(f"{tree}: {'holds' if holds else 'differs'}")
                self.emit(f"π([[]] [[]]): {'holds' if cherry['holds'] else 'differs'}")
            return

        if action == "rewrite":
            with bound_scope(order4.ORDER):
                x = parse_expression(self.require(options["expressions"], 1)[0])
            poly = order4.rewrite(x)
            self.emit(order4.polynomial_text(poly, "latex" if fmt == "latex" else "text"))
            return

        if not options["gens"]:
            raise CommandError("extend needs --gens FILE", returncode=EXIT_USAGE)
        path = Path(options["gens"])
        if not path.exists():
            raise CommandError(f"Generator file not found: {path}", returncode=EXIT_USAGE)
        try:
            values = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise CommandError(f"Invalid generator file: {e}", returncode=EXIT_USAGE)
        character = order4.extend_character(
            {key: float(value) for key, value in values.items()}, tuple(options["interval"])
        )
        payload = character.to_json()
        if fmt == "json":
            self.emit(payload)
        else:
            for code, value in payload["values"].items():
                self.emit(f"{code}: {value:.10g}")
