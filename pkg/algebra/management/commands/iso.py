from algebra.services import hopf, morphisms
from algebra.services.expressions import parse_expression, parse_word, render
from common.commands import BranchedCommand


class Command(BranchedCommand):
    help = "Exp/Log isomorphisms, Hoffman's exponential and arborification"

    actions = (
        "log",
        "exp",
        "hoffman-exp",
        "hoffman-log",
        "arborify",
        "quasi-arborify",
        "obstructions",
        "failed-attempts",
    )

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--geometric",
            action="store_true",
            help="obstructions: also forbid edge-free primitives with several nodes",
        )

    def run_action(self, action, options, config):
        fmt = config.output_format
        exprs = options["expressions"]

        if action == "obstructions":
            found = morphisms.quasi_geometric_obstructions(
                config.bound, config.alphabet, options["geometric"]
            )
            if fmt == "json":
                self.emit([{"name": o.name, "element": render(o.element, "json")} for o in found])
            else:
                for obstruction in found:
                    self.emit(obstruction.name)
            return

        if action == "failed-attempts":
            report = morphisms.failed_attempts(min(config.bound, 4))
            payload = {
                "top_inverse_multiplicative": report["top_inverse_multiplicative"],
                "top_inverse_defect": render(report["top_inverse_defect"], fmt),
                "phi_coalgebra_defects": [f.code for f in report["phi_coalgebra_defects"]],
            }
            if fmt == "json":
                self.emit(payload)
            else:
                for key, value in payload.items():
                    self.emit(f"{key}: {value}")
            return

        text = self.require(exprs, 1)[0]
        if action == "log":
            result = morphisms.log_iso(parse_expression(text, config.alphabet))
        elif action == "exp":
            result = morphisms.exp_iso(parse_word(text, config.alphabet))
        elif action == "hoffman-exp":
            result = morphisms.hoffman_exp(parse_word(text, config.alphabet))
        elif action == "hoffman-log":
            result = morphisms.hoffman_log(parse_word(text, config.alphabet))
        elif action == "arborify":
            result = morphisms.arborify(parse_expression(text, config.alphabet))
        else:
            result = morphisms.quasi_arborify(parse_expression(text, config.alphabet))
        hopf.guard(result)
        self.emit(render(result, fmt))
