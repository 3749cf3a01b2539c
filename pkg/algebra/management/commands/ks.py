import numpy as np

from algebra.services import kailath
from algebra.services.expressions import parse_expression, render
from common.commands import BranchedCommand
from common.config import bound_scope


class Command(BranchedCommand):
    help = "Kailath-Segall polynomials, plain and transported into H_CK"

    actions = ("table", "branched", "classical")

    def add_command_arguments(self, parser):
        parser.add_argument("--n", type=int, default=4, help="Largest index")
        parser.add_argument("--p", default="[]", help="Primitive element for --branched")
        parser.add_argument("--branched", action="store_true", help="table: transport x_n ↦ p^{⊤n}")
        parser.add_argument("--m", type=int, default=1, help="classical: ladder size of π(r_m)")
        parser.add_argument("--steps", type=int, default=256, help="classical: increments sampled")

    def run_action(self, action, options, config):
        fmt = config.output_format
        n = options["n"]

        if action == "classical":
            rng = np.random.default_rng([config.seed, 2])
            increments = rng.normal(0.0, options["steps"] ** -0.5, options["steps"])
            with bound_scope(options["m"] * n) as bound:
                character = kailath.iterated_sums_character(increments, bound)
                residual = kailath.classical_ks_check(character, options["m"], n)
            self.emit({"residual": residual} if fmt == "json" else f"residual: {residual:.3e}")
            if residual > max(config.tol, 1e-8):
                self.fail(f"Classical recursion residual {residual:.3e}")
            return

        if action == "branched" or options["branched"]:
            p = parse_expression(options["p"], config.alphabet)
            report = kailath.branched_ks(p, n)
            if fmt == "json":
                self.emit(
                    {
                        "P": {str(k): render(v, "json") for k, v in report["P"].items()},
                        "expansion_defect": render(report["expansion_defect"], "json"),
                        "recursion_defect": render(report["recursion_defect"], "json"),
                        "pi_fixed": report["pi_fixed"],
                    }
                )
            else:
                for k, value in report["P"].items():
                    self.emit(f"P_{k}: {render(value, fmt)}")
            if not (
                report["expansion_defect"].is_zero()
                and report["recursion_defect"].is_zero()
                and report["pi_fixed"]
            ):
                self.fail("Branched Kailath-Segall identities do not hold")
            return

        rows = {k: kailath.poly_text(kailath.ks_P(k)) for k in range(1, n + 1)}
        if fmt == "json":
            self.emit({f"P_{k}": text for k, text in rows.items()})
        else:
            for k, text in rows.items():
                self.emit(f"P_{k} = {text}")
