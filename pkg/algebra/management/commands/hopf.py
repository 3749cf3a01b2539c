from django.core.management.base import CommandError

from algebra.services import hopf, morphisms
from algebra.services.expressions import parse_expression, parse_word, render
from algebra.services.linalg import pair
from common.commands import BranchedCommand
from common.constants import EXIT_USAGE
from common.utils import CoefficientHelper


class Command(BranchedCommand):
    help = "Products, coproducts, π and the dual maps on decorated forests"

    actions = (
        "coproduct",
        "product",
        "pi",
        "pi-star",
        "top",
        "top-inverse",
        "binf",
        "antipode",
        "eulerian",
        "pair",
        "dim",
    )

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--side",
            choices=["ck", "gl", "snip", "forest"],
            help="coproduct: ck|gl|snip; product: forest|gl; antipode/eulerian: ck|gl",
        )
        parser.add_argument("--reduced", action="store_true", help="Drop unit legs")
        parser.add_argument("--iterate", type=int, default=1, help="Coproduct iterations")
        parser.add_argument("--m", type=int, help="Graded projection index")
        parser.add_argument("--d", type=int, default=1, help="Number of labels for dim")
        parser.add_argument("--n", type=int, help="Weight for dim")

    def run_action(self, action, options, config):
        fmt = config.output_format

        def parse(text):
            return parse_expression(text, config.alphabet)

        exprs = options["expressions"]

        if action == "dim":
            n = options["n"] or config.bound
            rows = [
                {
                    "weight": k,
                    "dim": hopf.primitive_dimension(k, options["d"]),
                    "polynomial": CoefficientHelper.text(
                        hopf.primitive_dimension_polynomial(k, options["d"])
                    )
                    if k <= 5
                    else None,
                }
                for k in range(1, n + 1)
            ]
            if fmt == "json":
                self.emit(rows)
            else:
                for row in rows:
                    self.emit(f"{row['weight']}: {row['dim']} (polynomial {row['polynomial']})")
            return

        if action == "pair":
            left, right = self.require(exprs, 2)
            value = pair(parse(left), parse(right), config.alphabet)
            self.emit(CoefficientHelper.text(value))
            return

        if action in ("top-inverse", "pi-star", "antipode", "eulerian", "pi", "coproduct"):
            x = parse(self.require(exprs, 1)[0])
        if action == "coproduct":
            side = options["side"] or "ck"
            if side == "ck":
                result = hopf.ck_coproduct(x, options["reduced"], options["iterate"])
            elif side == "gl":
                result = hopf.gl_coproduct(x, options["reduced"])
            elif side == "snip":
                result = hopf.snip_coproduct(x, options["iterate"])
            else:
                raise CommandError("coproduct --side is ck, gl or snip", returncode=EXIT_USAGE)
        elif action == "product":
            factors = [parse(text) for text in self.require(exprs)]
            if options["side"] == "gl":
                result = hopf.gl_star(*factors)
            else:
                result = hopf.product_many(*factors)
            hopf.guard(result)
        elif action == "pi":
            result = hopf.pi(x) if options["m"] is None else hopf.pi_m(x, options["m"])
        elif action == "pi-star":
            result = hopf.pi_star(x) if options["m"] is None else hopf.pi_star_n(x, options["m"])
        elif action == "top":
            result = hopf.top(*(parse(text) for text in self.require(exprs)))
            hopf.guard(result)
        elif action == "top-inverse":
            result = hopf.top_inverse(x)
        elif action == "binf":
            left, right = self.require(exprs, 2)
            result = hopf.binf_product(parse_word(left, config.alphabet), parse_word(right, config.alphabet))
        else:
            side = morphisms.HopfSide.GL if options["side"] == "gl" else morphisms.HopfSide.CK
            if action == "antipode":
                result = morphisms.antipode(x, side)
            elif options["m"] is None:
                result = morphisms.eulerian(x, side)
            else:
                result = morphisms.eulerian_n(x, options["m"], side)
        self.emit(render(result, fmt))
