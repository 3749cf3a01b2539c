"""
Controlled integrands, rough integrals against the order-4 lifts and the
Monte Carlo check of their identities with left-point Itô sums.

A controlled integrand is tabulated on the grid: its trace under the slot
``"1"`` and its Gubinelli derivatives under the Q-basis names of
``order4.Q_BASIS_NAMES``. The rough integral over ``[s, t]`` is the
compensated Riemann sum over a uniform partition, each block contributing

    ⟨H, 1⟩ X(p) + Σ_q ⟨H, q⟩ X(w_q ⊤ p) / ⟨w_q, q⟩

where ``w_q`` is the ⊤-word dual to ``q`` and only terms of total weight at
most 4 are kept.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache, partial

import numpy as np
import pandas as pd
import sympy

from algebra.services import order4
from algebra.services.expressions import parse_expression
from algebra.services.linalg import pair
from common.config import bound_scope
from common.constants import (
    DEFAULT_TEST_FUNCTION,
    INTEGRAL_GRID,
    INTEGRAL_LEVELS,
    TEXT_TOP,
)
from common.exceptions import ConfigurationError, ConventionError, GridError

from .harness import run_trials
from .lifts import Lift, LiftKind, build_lift
from .sampling import (
    fbm_factor,
    ito_sum,
    midpoint_riemann_sum,
    sample_bm,
    sample_fbm,
    weighted_riemann_sum,
)

logger = logging.getLogger(__name__)

UNIT_SLOT = "1"

SLOT_WORDS = {
    "[]": "[]",
    "[] []": "π([] [])",
    "[] * []": f"[] {TEXT_TOP} []",
    "[] [] []": "π([] [] [])",
    "([] []) * []": f"π([] []) {TEXT_TOP} []",
    "[] * ([] [])": f"[] {TEXT_TOP} π([] [])",
    "[] * [] * []": f"[] {TEXT_TOP} [] {TEXT_TOP} []",
}

INTEGRATORS = ("[]", "π([] [])", "π([] [] [])", "π([] [] [] [])", "π([[]] [[]])")

# Identities checked against the Itô oracle
ITO = "Itô sum"
ITO_PLUS_SQUARE = "Itô sum + 1/4 ∫⟨H,[] []⟩dr"
ITO_MINUS_STAR = "Itô sum − 1/4 ∫⟨H,[] * []⟩dr"
ITO_PLUS_SECOND = "Itô sum + 1/4 ∫φ''(X)dr"
ITO_BOTH = "Itô sum + 1/4 ∫⟨H,[] []⟩dr − 1/4 ∫⟨H,[] * []⟩dr"
CHANGE_HALF = "φ(X_t) − φ(X_s) − ∫Dφ dX^[] − 1/2 ∫φ''(X)dW"
CHANGE_FULL = "φ(X_t) − φ(X_s) − ∫Dφ dX^[] − ∫φ''(X)dW"
WEIGHTED_SUM = "weighted Riemann sum"
MIDPOINT_SUM = "midpoint Riemann sum"


def slot_weight(slot: str) -> int:
    return 0 if slot == UNIT_SLOT else slot.count("[]")


@lru_cache(maxsize=None)
def slot_factor(slot: str) -> float:
    """``1 / ⟨w_q, q⟩``, the weight of slot ``q`` in the local expansion."""
    if slot == UNIT_SLOT:
        return 1.0
    if slot not in SLOT_WORDS:
        raise ConfigurationError(f"Unknown controlled slot {slot!r}")
    with bound_scope(order4.ORDER):
        value = pair(parse_expression(SLOT_WORDS[slot]), order4.parse_gl(slot))
    if value == 0:
        raise ConventionError(f"Slot {slot} pairs to zero with its ⊤-word")
    return float(1 / value)


@lru_cache(maxsize=None)
def local_expansion(integrator: str) -> tuple[tuple[str, str, float], ...]:
    """Terms ``(slot, expression, factor)`` of one block of ``∫H dX^p``."""
    if integrator not in INTEGRATORS:
        raise ConfigurationError(
            f"Unknown integrator {integrator!r}; expected one of {list(INTEGRATORS)}"
        )
    with bound_scope(order4.ORDER):
        weight = max(forest.weight for forest in parse_expression(integrator))
    terms = [(UNIT_SLOT, integrator, 1.0)]
    for slot, word in SLOT_WORDS.items():
        if slot_weight(slot) + weight <= order4.ORDER:
            terms.append((slot, f"({word}) {TEXT_TOP} ({integrator})", slot_factor(slot)))
    return tuple(terms)


@dataclass(frozen=True, eq=False)
class ControlledTable:
    """``⟨H, q⟩`` along the grid; slots that are absent are identically zero."""

    slots: dict[str, np.ndarray]

    def __post_init__(self):
        if UNIT_SLOT not in self.slots:
            raise GridError("Controlled table has no trace slot")
        lengths = {len(values) for values in self.slots.values()}
        if len(lengths) != 1:
            raise GridError("Controlled slots live on different grids")
        for name, values in self.slots.items():
            if name != UNIT_SLOT and name not in SLOT_WORDS:
                raise GridError(f"Unknown controlled slot {name!r}")
            if not np.all(np.isfinite(values)):
                raise GridError(f"Slot {name!r} has non-finite coefficients")

    def __getitem__(self, slot: str) -> np.ndarray:
        values = self.slots.get(slot)
        return np.zeros_like(self.slots[UNIT_SLOT]) if values is None else values

    @property
    def n(self) -> int:
        return len(self.slots[UNIT_SLOT]) - 1


def controlled_of_function(derivatives: Sequence[np.ndarray]) -> ControlledTable:
    """
    The table of ``φ(X)`` for the trace-controlled path X.

    Args:
        derivatives: ``φ(X), φ'(X), φ''(X), φ'''(X)`` along the grid; missing
            higher derivatives are taken as zero

    Returns:
        Slots ``1: φ``, ``[]: φ'``, ``[] []`` and ``[] * []``: ``φ''`` and
        every weight-3 slot: ``φ'''``
    """
    if not derivatives:
        raise GridError("At least the values of φ are required")
    arrays = [np.asarray(d, dtype=float) for d in derivatives]
    arrays += [np.zeros_like(arrays[0])] * (4 - len(arrays))
    slots = {UNIT_SLOT: arrays[0]}
    for slot in SLOT_WORDS:
        slots[slot] = arrays[slot_weight(slot)]
    return ControlledTable(slots)


class SmoothFunction:
    """
    A test function φ given as a sympy expression in ``x``.

    Args:
        expression: e.g. ``"sin(x)"`` or ``"x**2/2"``
        order: Highest derivative made available
    """

    def __init__(self, expression: str = DEFAULT_TEST_FUNCTION, order: int = 5):
        symbol = sympy.Symbol("x")
        try:
            expr = sympy.sympify(expression)
        except (sympy.SympifyError, TypeError) as e:
            raise ConfigurationError(f"Cannot parse test function {expression!r}: {e}")
        if not expr.free_symbols <= {symbol}:
            raise ConfigurationError(f"Test function {expression!r} must depend on x only")
        self.expression = expression
        self.derivatives = []
        for _ in range(order + 1):
            self.derivatives.append(expr)
            expr = sympy.diff(expr, symbol)
        self._numeric = [sympy.lambdify(symbol, d, "numpy") for d in self.derivatives]

    def __repr__(self):
        return f"SmoothFunction({self.expression!r})"

    def __call__(self, values, k: int = 0) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        result = np.asarray(self._numeric[k](values), dtype=float)
        return np.broadcast_to(result, values.shape).copy()

    def table(self, path, shift: int = 0) -> ControlledTable:
        """Controlled table of ``φ^{(shift)}(X)`` along ``path``."""
        return controlled_of_function([self(path.values, shift + k) for k in range(4)])


def rough_integrate(
    table: ControlledTable,
    integrator: str,
    lift: Lift,
    s: float,
    t: float,
    blocks: int | None = None,
) -> float:
    """
    Compensated Riemann sum of ``∫_s^t H dX^p`` over ``blocks`` equal blocks.

    Raises:
        GridError: off-grid endpoints, or ``blocks`` not dividing the steps
    """
    if table.n != lift.x.n:
        raise GridError("Controlled table and lift live on different grids")
    i, j = lift.indices(s, t)
    steps = j - i
    if steps == 0:
        return 0.0
    blocks = steps if blocks is None else blocks
    if blocks < 1 or steps % blocks:
        raise GridError(f"{blocks} blocks do not divide the {steps} steps of [{s}, {t}]")
    starts = np.arange(i, j, steps // blocks)
    ends = starts + steps // blocks
    total = np.zeros(len(starts))
    for slot, expression, factor in local_expansion(integrator):
        coefficients = table[slot][starts]
        if not coefficients.any():
            continue
        total += factor * coefficients * lift.evaluate(expression, starts, ends)
    return float(total.sum())


def _targets(kind: LiftKind, table: ControlledTable, second: np.ndarray, ito: float, h: float):
    """Oracle values of ``∫H dX^{π([] [])}`` as ``(identity, alternative, target)``."""
    square = 0.25 * h * float(np.sum(table["[] []"][:-1]))
    star = 0.25 * h * float(np.sum(table["[] * []"][:-1]))
    if kind is LiftKind.II:
        return [(ITO, "", ito)]
    if kind is LiftKind.IS:
        return [(ITO_PLUS_SQUARE, "", ito + square)]
    if kind is LiftKind.SI:
        drift = 0.25 * h * float(np.sum(second[:-1]))
        return [(ITO_MINUS_STAR, "sign", ito - star), (ITO_PLUS_SECOND, "sign", ito + drift)]
    return [(ITO_BOTH, "", ito + square - star)]


def integral_residuals(
    seed: int,
    phi: SmoothFunction,
    kinds: Sequence[LiftKind],
    n: int,
    levels: Sequence[int],
    horizon: float = 1.0,
) -> list[dict]:
    """Residual rows of one Monte Carlo trial."""
    x = sample_fbm(n, horizon, seed)
    w = sample_bm(n, horizon, seed)
    h = x.step
    table = phi.table(x)
    gradient = phi.table(x, shift=1)
    unit = ControlledTable({UNIT_SLOT: np.ones(n + 1)})
    second = phi(x.values, 2)
    ito = ito_sum(table[UNIT_SLOT], w, 0.0, horizon)
    ito_second = ito_sum(second, w, 0.0, horizon)
    increment = float(phi(x.values[-1:])[0] - phi(x.values[:1])[0])

    rows = []

    def record(kind, identity, blocks, value, target, exact=False, alternative=""):
        rows.append(
            {
                "seed": seed,
                "kind": kind,
                "identity": identity,
                "alternative": alternative,
                "blocks": blocks,
                "value": value,
                "target": target,
                "residual": abs(value - target) if target is not None else np.nan,
                "exact": exact,
            }
        )

    for kind in kinds:
        lift = build_lift(kind, x, w)
        targets = _targets(kind, table, second, ito, h)
        for blocks in levels:
            z = rough_integrate(table, "π([] [])", lift, 0.0, horizon, blocks)
            for identity, alternative, target in targets:
                record(kind.value, identity, blocks, z, target, alternative=alternative)
            if kind is LiftKind.SS:
                first = rough_integrate(gradient, "[]", lift, 0.0, horizon, blocks)
                record(kind.value, CHANGE_HALF, blocks, first + 0.5 * ito_second, increment, alternative="scale")
                record(kind.value, CHANGE_FULL, blocks, first + ito_second, increment, alternative="scale")
            record(
                kind.value,
                "∫H dX^π([] [] []) = 0",
                blocks,
                rough_integrate(table, "π([] [] [])", lift, 0.0, horizon, blocks),
                0.0,
                exact=True,
            )
            square_ito = kind.square_ito
            record(
                kind.value,
                "∫dX^π([] [] [] [])",
                blocks,
                rough_integrate(unit, "π([] [] [] [])", lift, 0.0, horizon, blocks),
                horizon if square_ito else 0.0,
                exact=True,
            )
            record(
                kind.value,
                "∫dX^π([[]] [[]])",
                blocks,
                rough_integrate(unit, "π([[]] [[]])", lift, 0.0, horizon, blocks),
                horizon / 3 if square_ito else 0.0,
                exact=True,
            )
    for blocks in levels:
        record("", WEIGHTED_SUM, blocks, weighted_riemann_sum(x, phi, horizon, blocks), None)
        record("", MIDPOINT_SUM, blocks, midpoint_riemann_sum(x, partial(phi, k=1), horizon, blocks), None)
    return rows


def verify_integral_identities(
    kinds: Iterable[LiftKind | str],
    phi: SmoothFunction | str = DEFAULT_TEST_FUNCTION,
    trials: int = 100,
    master_seed: int = 0,
    workers: int = 1,
    n: int = INTEGRAL_GRID,
    levels: Sequence[int] = INTEGRAL_LEVELS,
    horizon: float = 1.0,
) -> pd.DataFrame:
    """
    Monte Carlo residuals of the rough-integral identities.

    Each trial samples X and W on ``n`` steps; the oracle is the left-point
    Itô sum on that grid, and each identity is evaluated on the uniform
    partitions with ``levels`` blocks.

    Returns:
        One row per (trial, kind, identity, partition)
    """
    if not isinstance(phi, SmoothFunction):
        phi = SmoothFunction(phi)
    kinds = [LiftKind(kind) for kind in kinds]
    levels = sorted(levels)
    if any(b < 2 or n % b for b in levels):
        raise GridError(f"Partitions {levels} must divide the grid of {n} steps")
    # One shared factor for every worker
    fbm_factor(n, float(horizon))
    logger.info(f"Integral identities: {trials} trials, N={n}, partitions {levels}, φ={phi.expression}")
    worker = partial(integral_residuals, phi=phi, kinds=kinds, n=n, levels=levels, horizon=horizon)
    per_trial = run_trials(worker, master_seed, trials, workers)
    return pd.DataFrame([row for rows in per_trial for row in rows])


def _decays(medians: pd.Series) -> bool:
    values = medians.to_numpy(dtype=float)
    blocks = medians.index.to_numpy(dtype=float)
    if len(values) < 2:
        return True
    rate = (blocks[0] / blocks[-1]) ** 0.25
    return bool(np.all(np.diff(values) < 0) and values[-1] < 5 * values[0] * rate)


def assess_integral_decay(frame: pd.DataFrame, tol: float) -> dict:
    """
    Judge a residual frame.

    Exact identities must hold within ``tol`` on every trial. Monte Carlo
    identities must have medians that decrease under refinement, the finest
    staying below five times the coarsest scaled by the fBm rate
    ``(n_coarse / n_fine)^{1/4}``. Among alternatives (the two signs of the
    Stratonovich-Itô correction, the two scalings of the change of
    variables) only the one with the smallest finest median is asserted.

    Returns:
        ``{"failures": [...], "medians": DataFrame, "matches": {...}}``
    """
    failures = []
    exact = frame[frame["exact"].astype(bool)]
    for (kind, identity), worst in exact.groupby(["kind", "identity"])["residual"].max().items():
        if worst > tol:
            failures.append(f"{kind}: {identity} off by {worst:.3e}")

    statistical = frame[~frame["exact"].astype(bool) & frame["residual"].notna()]
    medians = statistical.groupby(["kind", "identity", "blocks"])["residual"].median().unstack("blocks")
    alternatives = statistical.groupby(["kind", "identity"])["alternative"].first()

    matches = {}
    asserted = []
    for (kind, identity), alternative in alternatives.items():
        if not alternative:
            asserted.append((kind, identity))
            continue
        rivals = [key for key, alt in alternatives.items() if key[0] == kind and alt == alternative]
        best = min(rivals, key=lambda key: medians.loc[key].iloc[-1])
        matches[f"{kind} {alternative}"] = best[1]
        if best == (kind, identity):
            asserted.append((kind, identity))
    for key in asserted:
        if not _decays(medians.loc[key]):
            failures.append(f"{key[0]}: {key[1]} does not decay, medians {medians.loc[key].tolist()}")
    return {"failures": failures, "medians": medians, "matches": matches}
