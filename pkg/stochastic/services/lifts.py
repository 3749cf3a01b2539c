"""
The four order-4 branched rough paths over a 1/4-fBm X driven by an
independent Brownian motion W.

Generator values on a grid pair ``(s, t)``, in the order of
``order4.GENERATOR_NAMES``::

    []                          X_t − X_s
    π([] [])                    W_t − W_s
    π([] [] [])                 0
    [] ⊤ π([] [])               A = Σ (X_i − X_s) ΔW_i
    π([] [] []) ⊤ []            0
    π([] []) ⊤ π([] [])         C, Itô (ΔW² − (t−s))/2 or Stratonovich ΔW²/2
    [] ⊤ π([] [] [])            0
    [] ⊤ [] ⊤ π([] [])          B = Σ ((X_i − X_s)² − (W_i − W_s))/2 ΔW_i,
                                minus (t−s)/4 for Stratonovich

Sums run over grid steps in ``[s, t)`` and are read off prefix sums, so
every pair costs O(1) and Chen's relation holds up to roundoff.
"""

import logging
from enum import Enum
from functools import lru_cache

import numpy as np

from algebra.services import hopf, order4
from algebra.services.expressions import parse_expression
from algebra.structures.character import Character
from algebra.structures.forest import enumerate_forests
from algebra.structures.lincomb import LinComb
from common.config import bound_scope
from common.exceptions import GridError

from .sampling import GridPath

logger = logging.getLogger(__name__)


class LiftKind(str, Enum):
    """First letter: convention for ``[] ⊤ [] ⊤ π([] [])``; second: for ``π([] []) ⊤ π([] [])``."""

    SS = "SS"
    II = "II"
    IS = "IS"
    SI = "SI"

    @property
    def ladder_ito(self) -> bool:
        return self.value[0] == "I"

    @property
    def square_ito(self) -> bool:
        return self.value[1] == "I"

    @property
    def quasi_geometric(self) -> bool:
        return not self.square_ito


def _prefix(values: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], np.cumsum(values)))


@lru_cache(maxsize=None)
def component_polynomial(text: str) -> LinComb:
    """An order-4 expression rewritten as a generator polynomial."""
    with bound_scope(order4.ORDER):
        return order4.rewrite(parse_expression(text))


def evaluate_polynomial(poly: LinComb, generators: np.ndarray) -> np.ndarray:
    """Evaluate a generator polynomial on stacked generator values ``(8, m)``."""
    total = np.zeros(generators.shape[1])
    for monomial, coeff in poly.items():
        term = np.full(generators.shape[1], float(coeff))
        for i in monomial:
            term = term * generators[i]
        total += term
    return total


class Lift:
    """
    A branched rough path of a given kind, evaluated on grid pairs.

    Args:
        kind: One of the four lift kinds
        x: The 1/4-fBm path
        w: The independent Brownian path on the same grid
    """

    def __init__(self, kind: LiftKind, x: GridPath, w: GridPath):
        if x.n != w.n or not np.isclose(x.horizon, w.horizon):
            raise GridError("X and W must share one grid")
        self.kind = LiftKind(kind)
        self.x = x
        self.w = w
        dw = w.increments()
        xs, ws = x.values[:-1], w.values[:-1]
        self._sxw = _prefix(xs * dw)
        self._sx2w = _prefix(xs**2 * dw)
        self._sww = _prefix(ws * dw)

    @property
    def times(self) -> np.ndarray:
        return self.x.times

    def indices(self, s: float, t: float) -> tuple[int, int]:
        i, j = self.x.index_of(s), self.x.index_of(t)
        if i > j:
            raise GridError(f"Interval ({s}, {t}) is reversed")
        return i, j

    def generator_arrays(self, starts, ends) -> np.ndarray:
        """Generator values on the pairs ``(starts[k], ends[k])``, shape ``(8, m)``."""
        i = np.asarray(starts, dtype=int)
        j = np.asarray(ends, dtype=int)
        xv, wv = self.x.values, self.w.values
        x_s, w_s = xv[i], wv[i]
        dx = xv[j] - x_s
        dw = wv[j] - w_s
        h = self.times[j] - self.times[i]
        sxw = self._sxw[j] - self._sxw[i]
        a = sxw - x_s * dw
        b = 0.5 * (
            (self._sx2w[j] - self._sx2w[i])
            - 2.0 * x_s * sxw
            + x_s**2 * dw
            - (self._sww[j] - self._sww[i])
            + w_s * dw
        )
        if not self.kind.ladder_ito:
            b = b - 0.25 * h
        c = 0.5 * dw**2 - (0.5 * h if self.kind.square_ito else 0.0)
        zero = np.zeros_like(dx)
        return np.stack([dx, dw, zero, a, zero, c, zero, b])

    def generator_values(self, s: float, t: float) -> dict[str, float]:
        i, j = self.indices(s, t)
        column = self.generator_arrays([i], [j])[:, 0]
        return {name: float(v) for name, v in zip(order4.GENERATOR_NAMES, column, strict=True)}

    def character_at(self, i: int, j: int) -> Character:
        column = self.generator_arrays([i], [j])[:, 0]
        interval = (float(self.times[i]), float(self.times[j]))
        return order4.extend_character(dict(enumerate(column.tolist())), interval)

    def character(self, s: float, t: float) -> Character:
        return self.character_at(*self.indices(s, t))

    def evaluate(self, text: str, starts, ends) -> np.ndarray:
        """``⟨x, X_{s,t}⟩`` on many pairs for an order-4 expression ``text``."""
        return evaluate_polynomial(component_polynomial(text), self.generator_arrays(starts, ends))


def build_lift(kind: LiftKind | str, x: GridPath, w: GridPath) -> Lift:
    return Lift(LiftKind(kind), x, w)


def random_triples(n: int, count: int, rng: np.random.Generator) -> list[tuple[int, int, int]]:
    """Grid triples ``s ≤ u ≤ t`` with ``s < t``."""
    triples = []
    while len(triples) < count:
        s, u, t = sorted(int(v) for v in rng.integers(0, n + 1, size=3))
        if s < t:
            triples.append((s, u, t))
    return triples


@lru_cache(maxsize=1)
def _order4_coproducts() -> dict:
    with bound_scope(order4.ORDER):
        return {
            forest: hopf.ck_coproduct(LinComb.of(forest))
            for forest in enumerate_forests(order4.ORDER)
        }


def chen_check(lift: Lift, triples) -> dict[str, float]:
    """
    Largest relative residual of ``X_{s,t} = X_{s,u} ⋆ X_{u,t}`` on every
    forest of weight at most 4, the pruned leg on the earlier interval.
    """
    coproducts = _order4_coproducts()
    worst = {forest.code: 0.0 for forest in coproducts}
    for s, u, t in triples:
        whole, left, right = lift.character_at(s, t), lift.character_at(s, u), lift.character_at(u, t)
        for forest, coproduct in coproducts.items():
            expected = 0.0
            size = abs(float(whole[forest]))
            for (pruned, trunk), c in coproduct.items():
                term = float(c) * float(left[pruned]) * float(right[trunk])
                expected += term
                size = max(size, abs(term))
            residual = abs(float(whole[forest]) - expected) / max(1.0, size)
            worst[forest.code] = max(worst[forest.code], residual)
    return worst


def dyadic_levels(n: int) -> list[int]:
    """Scales ``2^-k`` used by the regularity fit, clear of both grid ends."""
    top = int(np.log2(n))
    return list(range(2, max(top - 1, 3)))


def regularity_estimate(lift: Lift, text: str, statistic: str = "rms") -> dict:
    """
    Fit ``log |⟨f, X_{s,t}⟩|`` against ``log (t − s)`` over dyadic pairs.

    Args:
        lift: The lift to inspect
        text: Order-4 expression of the component ``f``
        statistic: ``rms`` or ``sup`` over the pairs of one scale

    Returns:
        ``{"slope": float | None, "levels": [...], "degenerate": bool}``
    """
    n = lift.x.n
    scales, stats = [], []
    for k in dyadic_levels(n):
        stride = n >> k
        starts = np.arange(0, n, stride)
        values = np.abs(lift.evaluate(text, starts, starts + stride))
        stat = float(np.max(values)) if statistic == "sup" else float(np.sqrt(np.mean(values**2)))
        scales.append(lift.x.step * stride)
        stats.append(stat)
    if min(stats, default=0.0) <= 0.0:
        logger.warning(f"Component {text} vanishes on some scale; no slope fitted")
        return {"slope": None, "levels": stats, "degenerate": True}
    slope = float(np.polyfit(np.log(scales), np.log(stats), 1)[0])
    return {"slope": slope, "levels": stats, "degenerate": False}
