from common.commands import BranchedCommand
from common.constants import STOCHASTIC_SUITES, SYMBOLIC_SUITES
from common.decorators import suite_registry
from common.services.verification import run_suites


class Command(BranchedCommand):
    help = "Run the identity suites and report per-suite results"

    actions = ("all", "symbolic", "stochastic", "suite", "list")

    def add_command_arguments(self, parser):
        parser.add_argument("--trials", type=int, help="Monte-Carlo trials for stochastic suites")
        parser.add_argument("--workers", type=int, help="Worker threads for stochastic suites")

    def config_overrides(self, options):
        return {"mc_trials": options.get("trials"), "workers": options.get("workers")}

    def run_action(self, action, options, config):
        if action == "list":
            for kind in ("symbolic", "stochastic"):
                for name in suite_registry.list_suites(kind):
                    self.emit(f"{name} ({kind})")
            return
        if action == "suite":
            names = self.require(options["expressions"])
        elif action == "symbolic":
            names = SYMBOLIC_SUITES
        elif action == "stochastic":
            names = STOCHASTIC_SUITES
        else:
            names = [*SYMBOLIC_SUITES, *STOCHASTIC_SUITES]
        self.report_suites(run_suites(names, config))
