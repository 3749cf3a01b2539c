from algebra.services import prelie
from algebra.services.expressions import parse_expression
from common.commands import BranchedCommand


class Command(BranchedCommand):
    help = "Modified vector fields F̂, differential operators 𝐅 and the Davie/Itô tables"

    actions = ("davie", "ito", "f-hat", "f-bold")

    def add_command_arguments(self, parser):
        parser.add_argument("--level", type=int, default=3, help="Largest weight in a table")
        parser.add_argument("--latex", action="store_true", help="Shortcut for --format latex")

    def run_action(self, action, options, config):
        fmt = "latex" if options["latex"] else config.output_format

        if action in ("davie", "ito"):
            build = prelie.davie_table if action == "davie" else prelie.ito_table
            table = build(options["level"], config.alphabet)
            if fmt == "json":
                self.emit({forest.code: prelie.element_json(value) for forest, value in table.items()})
            else:
                for line in prelie.table_lines(table, fmt):
                    self.emit(line)
            return

        h = parse_expression(self.require(options["expressions"], 1)[0], config.alphabet)
        result = prelie.f_hat(h) if action == "f-hat" else prelie.f_bold(h)
        if fmt == "json":
            self.emit(prelie.element_json(result))
        else:
            self.emit(prelie.format_element(result, fmt))
