"""
Monte Carlo and grid-exact verification suites for the four lifts.
"""

import logging

import numpy as np
from scipy.stats import norm

from algebra.services import morphisms
from algebra.services.expressions import parse_expression
from common.decorators import verification_suite
from common.services.verification import VerificationSuite

from .services.harness import qv_table, sampler_statistics
from .services.integrals import assess_integral_decay, verify_integral_identities
from .services.lifts import (
    LiftKind,
    build_lift,
    chen_check,
    random_triples,
    regularity_estimate,
)
from .services.sampling import path_rng, sample_bm, sample_fbm

logger = logging.getLogger(__name__)

CHEN_GRID = 2**12
CHEN_TRIPLES = 100
REGULARITY_GRID = 2**12
QUASIGEO_GRID = 2**10
QV_GRID = 2**12
QV_TIMES = (0.25, 0.5, 1.0)
QV_PARTITIONS = (2**6, 2**8, 2**10)
SAMPLER_SAMPLES = 20_000

# Expected exponents |f|/4 of the components fitted by the regularity suite
REGULARITY_TARGETS = {"[]": 0.25, "π([] [])": 0.5}
REGULARITY_SLACK = 0.1
REPORTED_COMPONENTS = ("[] ⊤ π([] [])", "π([] []) ⊤ π([] [])", "[] ⊤ [] ⊤ π([] [])", "π([] [] [])")


def _paths(n: int, seed: int):
    return sample_fbm(n, 1.0, seed), sample_bm(n, 1.0, seed)


@verification_suite("chen", kind="stochastic")
class ChenSuite(VerificationSuite):
    """Chen's relation on random grid triples for every forest of weight at most 4."""

    def execute(self):
        x, w = _paths(CHEN_GRID, self.config.seed)
        triples = random_triples(CHEN_GRID, CHEN_TRIPLES, path_rng(self.config.seed, 3))
        triples += [(0, 0, CHEN_GRID), (0, CHEN_GRID, CHEN_GRID)]
        tol = max(self.config.tol, 1e-9)
        for kind in LiftKind:
            worst = chen_check(build_lift(kind, x, w), triples)
            code, residual = max(worst.items(), key=lambda item: item[1])
            self.check(residual <= tol, f"{kind.value}: Chen residual {residual:.3e} on {code}")
            self.details[kind.value] = residual


@verification_suite("regularity", kind="stochastic")
class RegularitySuite(VerificationSuite):
    """Fitted Hölder exponents of the lift components."""

    def execute(self):
        x, w = _paths(REGULARITY_GRID, self.config.seed)
        statistic = self.config.statistic
        for kind in LiftKind:
            lift = build_lift(kind, x, w)
            fitted = {}
            for text, target in REGULARITY_TARGETS.items():
                estimate = regularity_estimate(lift, text, statistic)
                fitted[text] = estimate["slope"]
                self.check(
                    estimate["slope"] is not None and abs(estimate["slope"] - target) <= REGULARITY_SLACK,
                    f"{kind.value}: slope of {text} is {estimate['slope']} instead of {target}",
                )
            for text in REPORTED_COMPONENTS:
                estimate = regularity_estimate(lift, text, statistic)
                if estimate["degenerate"]:
                    self.warn(f"{kind.value}: {text} vanishes, not fitted")
                fitted[text] = estimate["slope"]
            self.details[kind.value] = fitted


@verification_suite("quasigeo", kind="stochastic")
class QuasiGeometricSuite(VerificationSuite):
    """
    Exact quasi-geometricity verdicts: SS and IS pass, II and SI fail with
    ``⟨π([[]] [[]]), X_{s,t}⟩ = (t − s)/3``.
    """

    def execute(self):
        x, w = _paths(QUASIGEO_GRID, self.config.seed)
        cherry = parse_expression("π([[]] [[]])")
        pairs = [(0, QUASIGEO_GRID), (0, QUASIGEO_GRID // 2), (QUASIGEO_GRID // 4, QUASIGEO_GRID // 4 + 3)]
        tol = max(self.config.tol, 1e-9)
        for kind in LiftKind:
            lift = build_lift(kind, x, w)
            verdicts = []
            for i, j in pairs:
                character = lift.character_at(i, j)
                h = float(lift.times[j] - lift.times[i])
                expected = h / 3 if kind.square_ito else 0.0
                value = float(character.evaluate(cherry))
                self.check(
                    abs(value - expected) <= tol,
                    f"{kind.value}: ⟨π([[]] [[]])⟩ = {value:.6g} on [{lift.times[i]}, {lift.times[j]}], expected {expected:.6g}",
                )
                report = morphisms.check_character(character, tol=tol)
                self.check(
                    report["verdict"] == kind.quasi_geometric,
                    f"{kind.value}: quasi-geometric verdict {report['verdict']} on [{i}, {j}]",
                )
                geometric = morphisms.check_character(character, tol=tol, geometric=True)
                self.check(not geometric["verdict"], f"{kind.value}: lift tested geometric")
                verdicts.append([name for name, _ in report["witnesses"]])
            self.details[kind.value] = verdicts


@verification_suite("integrals", kind="stochastic")
class IntegralSuite(VerificationSuite):
    """Rough-integral identities against left-point Itô sums."""

    def execute(self):
        frame = verify_integral_identities(
            list(LiftKind),
            self.config.test_function,
            trials=self.config.mc_trials,
            master_seed=self.config.seed,
            workers=self.config.workers,
        )
        assessment = assess_integral_decay(frame, max(self.config.tol, 1e-9))
        self.checks += len(frame)
        self.errors.extend(assessment["failures"])
        for group, identity in assessment["matches"].items():
            logger.info(f"{group}: the data match {identity}")
        medians = assessment["medians"]
        medians.columns = [str(c) for c in medians.columns]
        self.details["medians"] = medians.reset_index().to_dict(orient="records")
        self.details["matches"] = assessment["matches"]
        sums = frame[frame["kind"] == ""].groupby(["identity", "blocks"])["value"].agg(["mean", "std"])
        self.details["riemann_sums"] = sums.reset_index().to_dict(orient="records")


@verification_suite("qv", kind="stochastic")
class QuadraticVariationSuite(VerificationSuite):
    """
    Renormalised quadratic variation: centred within a Bonferroni-adjusted
    band, with the variance per unit time reported as the estimated limit
    constant.
    """

    def execute(self):
        table = qv_table(
            QV_GRID,
            QV_TIMES,
            QV_PARTITIONS,
            self.config.mc_trials,
            self.config.seed,
            self.config.workers,
        )
        threshold = max(3.0, float(norm.isf(0.0005 / (2 * len(table)))))
        for row in table.itertuples():
            z = abs(row.mean) / row.stderr if row.stderr > 0 else np.inf
            self.check(z <= threshold, f"QV mean {row.mean:.4g} at t={row.t}, n={row.partition} is {z:.2f} s.e. from 0")
        finest = table[table["partition"] == max(QV_PARTITIONS)]
        self.details["table"] = table.to_dict(orient="records")
        self.details["limit_constant_estimate"] = float(finest["variance_over_t"].mean())


@verification_suite("sampler", kind="stochastic")
class SamplerSuite(VerificationSuite):
    """Covariance of the fBm and Brownian samplers against their models."""

    def execute(self):
        for kind in ("fbm14", "bm"):
            stats = sampler_statistics(
                kind,
                samples=SAMPLER_SAMPLES,
                master_seed=self.config.seed,
                workers=self.config.workers,
            )
            self.check(
                stats["passed"],
                f"{kind}: covariance z-score {stats['max_z']:.2f} above {stats['threshold']:.2f}",
            )
            if stats["beyond_3se"]:
                self.warn(f"{kind}: {stats['beyond_3se']} of {stats['entries']} entries beyond 3 s.e.")
            self.details[kind] = stats
        x, w = _paths(16, self.config.seed)
        self.check(x.values[0] == 0.0 and w.values[0] == 0.0, "Sampled paths do not start at 0")
