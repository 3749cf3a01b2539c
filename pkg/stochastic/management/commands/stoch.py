from pathlib import Path

from django.core.management.base import CommandError

from algebra.services.expressions import parse_expression
from common.commands import BranchedCommand
from common.constants import (
    EXIT_USAGE,
    LIFT_KINDS,
    REGULARITY_STATISTICS,
    STOCHASTIC_SUITES,
)
from common.services.verification import run_suites
from common.utils import ReportHelper
from stochastic.services import build_lift, sample_bm, sample_fbm
from stochastic.services.sampling import check_resolution

CHERRY_PAIR = "π([[]] [[]])"


class Command(BranchedCommand):
    help = "Sample 1/4-fBm lifts and run the stochastic suites"

    actions = ("simulate", "verify")

    def add_command_arguments(self, parser):
        parser.add_argument("--kind", choices=[code for code, _ in LIFT_KINDS], default="II")
        parser.add_argument("--n", type=int, default=4096, help="Grid steps, a power of two")
        parser.add_argument("--T", dest="horizon", type=float, default=1.0, help="Horizon")
        parser.add_argument(
            "--pair",
            nargs=2,
            type=float,
            action="append",
            metavar=("S", "T"),
            help="simulate: grid pair to report; repeatable, defaults to (0, T)",
        )
        parser.add_argument("--out", help="simulate: write the JSON report to FILE")
        parser.add_argument(
            "--suite", nargs="+", choices=STOCHASTIC_SUITES, help="verify: suites to run (default all)"
        )
        parser.add_argument("--trials", type=int, help="Monte-Carlo trials")
        parser.add_argument("--workers", type=int, help="Worker threads")
        parser.add_argument("--statistic", choices=REGULARITY_STATISTICS, help="Regularity statistic")
        parser.add_argument("--phi", help="Test function in x for the integral identities")

    def config_overrides(self, options):
        return {
            "mc_trials": options.get("trials"),
            "workers": options.get("workers"),
            "statistic": options.get("statistic"),
            "test_function": options.get("phi"),
        }

    def run_action(self, action, options, config):
        if action == "verify":
            self.report_suites(run_suites(options["suite"] or STOCHASTIC_SUITES, config))
            return

        n, horizon = options["n"], options["horizon"]
        if horizon <= 0:
            raise CommandError("--T must be positive", returncode=EXIT_USAGE)
        check_resolution(n)
        x = sample_fbm(n, horizon, config.seed)
        w = sample_bm(n, horizon, config.seed)
        lift = build_lift(options["kind"], x, w)
        cherry = parse_expression(CHERRY_PAIR)
        pairs = []
        for s, t in options["pair"] or [(0.0, horizon)]:
            pairs.append(
                {
                    "s": s,
                    "t": t,
                    "generators": lift.generator_values(s, t),
                    CHERRY_PAIR: float(lift.character(s, t).evaluate(cherry)),
                }
            )
        payload = {
            "kind": lift.kind.value,
            "n": n,
            "T": horizon,
            "seed": config.seed,
            "grid": x.times.tolist(),
            "X": x.values.tolist(),
            "W": w.values.tolist(),
            "pairs": pairs,
        }
        if options["out"]:
            Path(options["out"]).write_text(ReportHelper.dumps(payload))
            self.stdout.write(self.style.SUCCESS(f"Wrote {lift.kind.value} lift on {n} steps to {options['out']}"))
            return
        if config.output_format == "json":
            self.emit(payload)
            return
        for pair in pairs:
            self.emit(f"[{pair['s']}, {pair['t']}]")
            for name, value in pair["generators"].items():
                self.emit(f"  {name}: {value:.10g}")
            self.emit(f"  {CHERRY_PAIR}: {pair[CHERRY_PAIR]:.10g}")
