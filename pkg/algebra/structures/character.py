"""
Truncated characters: values of a rough-path increment on forests.
"""

import logging
from collections.abc import Callable, Iterable, Mapping
from fractions import Fraction

from common.exceptions import CharacterError

from .forest import Forest, enumerate_forests, tree_factorial
from .lincomb import LinComb

logger = logging.getLogger(__name__)

Number = float | Fraction


class Character:
    """
    A linear functional on H_CK given by its values on basis forests up to
    ``bound``. The value on the unit is always 1.
    """

    def __init__(
        self,
        values: Mapping[Forest, Number],
        interval: tuple[float, float] = (0.0, 0.0),
        bound: int = 4,
    ):
        self.values: dict[Forest, Number] = dict(values)
        self.values[Forest.unit()] = self.values.get(Forest.unit(), 1)
        self.interval = interval
        self.bound = bound

    def __getitem__(self, forest: Forest) -> Number:
        try:
            return self.values[forest]
        except KeyError:
            raise CharacterError(f"Character has no value on {forest.code}")

    def evaluate(self, x: LinComb) -> Number:
        """``⟨x, X⟩`` for an element x of H_CK."""
        total: Number = 0
        for forest, coeff in x.items():
            value = self[forest]
            total += value * (float(coeff) if isinstance(value, float) else coeff)
        return total

    def multiplicativity_defects(self, tol: float = 0.0) -> list[tuple[str, float]]:
        """Products ``f·g`` within the bound where ``X(fg) ≠ X(f)X(g)``."""
        defects = []
        for forest in self.values:
            if len(forest.trees) < 2:
                continue
            head, rest = Forest(forest.trees[:1]), Forest(forest.trees[1:])
            expected = self[head] * self[rest]
            gap = abs(float(self[forest] - expected))
            if gap > tol * max(1.0, abs(float(expected))):
                defects.append((forest.code, gap))
        return defects

    def validate(self, tol: float = 0.0) -> None:
        defects = self.multiplicativity_defects(tol)
        if defects:
            code, gap = defects[0]
            raise CharacterError(
                f"Character is not multiplicative on {code} (defect {gap:.3g})"
            )

    @classmethod
    def from_trees(
        cls,
        tree_values: Callable[[Forest], Number],
        bound: int = 4,
        alphabet: Iterable[str] = ("",),
        interval: tuple[float, float] = (0.0, 0.0),
    ) -> "Character":
        """Extend values on trees multiplicatively to every forest."""
        values: dict[Forest, Number] = {}
        for forest in enumerate_forests(bound, tuple(alphabet)):
            value: Number = 1
            for tree in forest.trees:
                value *= tree_values(tree.as_forest())
            values[forest] = value
        return cls(values, interval, bound)

    @classmethod
    def smooth(
        cls, increment: Number, bound: int = 4, interval=(0.0, 0.0)
    ) -> "Character":
        """The geometric lift of a scalar smooth path: ``Δx^{|f|} / f!``."""
        return cls.from_trees(
            lambda f: increment**f.weight / tree_factorial(f),
            bound=bound,
            interval=interval,
        )

    def to_json(self) -> dict:
        return {
            "interval": list(self.interval),
            "values": {
                f.code: float(v) for f, v in self.values.items() if not f.is_unit
            },
        }
