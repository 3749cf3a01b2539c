"""
LinComb is a dictionary of the form basis key -> Fraction where zero
coefficients are never stored. It supports addition and scalar
multiplication as vectors in a vector space.

Keys are Forests for elements of H_CK / H_GL, and tuples of Forests for
tensor words (one Forest per slot). Any other hashable, orderable key
(exponent vectors, monomial tuples) works as well.
"""

from collections.abc import Callable, Iterable
from fractions import Fraction
from typing import Any

from .forest import Forest


def sort_key(key: Any) -> tuple:
    """Deterministic ordering for mixed basis keys."""
    if isinstance(key, Forest):
        return (0, key.key)
    if isinstance(key, tuple):
        return (1, len(key), tuple(sort_key(part) for part in key))
    return (2, key)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator()
    return Fraction(value)


class LinComb(dict):
    def __init__(self, data=()):
        super().__init__()
        if isinstance(data, LinComb):
            dict.update(self, data)
        else:
            self.__iadd__(data)

    @classmethod
    def of(cls, key, coeff=1) -> "LinComb":
        return cls(((key, coeff),))

    def __getitem__(self, key):
        return self.get(key, Fraction(0))

    def copy(self) -> "LinComb":
        return LinComb(self)

    def add_term(self, key, coeff) -> "LinComb":
        if coeff == 0:
            return self
        total = self.get(key, 0) + as_fraction(coeff)
        if total == 0:
            del self[key]
        else:
            dict.__setitem__(self, key, total)
        return self

    def iadd_coef(self, coef, other) -> "LinComb":
        """self += coef * other"""
        if coef == 0:
            return self
        coef = as_fraction(coef)
        items = other.items() if isinstance(other, dict) else other
        for key, value in items:
            self.add_term(key, coef * value)
        return self

    def __iadd__(self, other):
        items = other.items() if isinstance(other, dict) else other
        for key, value in items:
            self.add_term(key, value)
        return self

    def __add__(self, other):
        result = LinComb(self)
        result.__iadd__(other)
        return result

    def __isub__(self, other):
        return self.iadd_coef(-1, other)

    def __sub__(self, other):
        result = LinComb(self)
        result.__isub__(other)
        return result

    def __neg__(self):
        return self * -1

    def __mul__(self, n):
        if isinstance(n, dict):
            return NotImplemented
        n = as_fraction(n)
        if n == 0:
            return LinComb()
        return LinComb((k, n * x) for k, x in self.items())

    def __rmul__(self, n):
        return self.__mul__(n)

    def __truediv__(self, n):
        return self * (1 / as_fraction(n))

    def __repr__(self):
        body = ", ".join(f"{k!s}: {v}" for k, v in self.terms())
        return f"LinComb({{{body}}})"

    def terms(self) -> list[tuple[Any, Fraction]]:
        """Items in deterministic basis order."""
        return sorted(self.items(), key=lambda item: sort_key(item[0]))

    def is_zero(self) -> bool:
        return not self

    def linear_map(self, fn: Callable[[Any], "LinComb"]) -> "LinComb":
        """Extend ``fn`` (defined on basis keys) linearly."""
        result = LinComb()
        for key, coeff in self.items():
            result.iadd_coef(coeff, fn(key))
        return result

    def filter(self, predicate: Callable[[Any], bool]) -> "LinComb":
        return LinComb((k, v) for k, v in self.items() if predicate(k))


def bilinear(
    left: LinComb, right: LinComb, fn: Callable[[Any, Any], LinComb]
) -> LinComb:
    """Extend ``fn`` (defined on pairs of basis keys) bilinearly."""
    result = LinComb()
    for a, ca in left.items():
        for b, cb in right.items():
            result.iadd_coef(ca * cb, fn(a, b))
    return result


def tensor_product(*parts: LinComb) -> LinComb:
    """
    Multilinear tensor product. Forest keys become one slot; tuple keys are
    concatenated, so words multiply by concatenation.
    """
    result = LinComb.of(())
    for part in parts:
        step = LinComb()
        for word, cw in result.items():
            for key, ck in part.items():
                slots = key if isinstance(key, tuple) else (key,)
                step.add_term(word + slots, cw * ck)
        result = step
    return result


def single(forest: Forest, coeff=1) -> LinComb:
    return LinComb.of(forest, coeff)


def from_forests(forests: Iterable[Forest]) -> LinComb:
    result = LinComb()
    for forest in forests:
        result.add_term(forest, 1)
    return result


def word_length_parts(tensor: LinComb) -> dict[int, LinComb]:
    """Split a tensor into its homogeneous word-length components."""
    parts: dict[int, LinComb] = {}
    for word, coeff in tensor.items():
        parts.setdefault(len(word), LinComb()).add_term(word, coeff)
    return parts
