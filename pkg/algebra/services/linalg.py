"""
Exact linear algebra over forest and tensor-word bases.

Coordinates are taken against explicit ordered bases and handed to sympy's
exact rational matrices for ranks and solves.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction

import sympy

from common.exceptions import AlphabetMismatchError, ConventionError

from ..structures.forest import sigma
from ..structures.lincomb import LinComb, sort_key

logger = logging.getLogger(__name__)


def _labels_of(x: LinComb) -> set[str]:
    found: set[str] = set()
    for key in x:
        slots = key if isinstance(key, tuple) else (key,)
        for forest in slots:
            found |= forest.labels
    return found


def pair(y: LinComb, x: LinComb, alphabet: Sequence[str] | None = None) -> Fraction:
    """
    Dual pairing ``⟨f, g⟩ = δ_{fg} σ(f)`` extended bilinearly.

    Args:
        y: Element of H_GL
        x: Element of H_CK
        alphabet: When given, both sides must only use these labels

    Returns:
        The exact pairing
    """
    if alphabet is not None:
        allowed = set(alphabet)
        for side in (y, x):
            stray = _labels_of(side) - allowed
            if stray:
                raise AlphabetMismatchError(
                    f"Labels {sorted(stray)} are not in the alphabet {sorted(allowed)}"
                )
    small, large = (y, x) if len(y) <= len(x) else (x, y)
    total = Fraction(0)
    for forest, c in small.items():
        other = large[forest]
        if other:
            total += c * other * sigma(forest)
    return total


def tensor_pair(w: LinComb, v: LinComb) -> Fraction:
    """Slotwise pairing of tensor words; words of different lengths pair to 0."""
    total = Fraction(0)
    for word, c in w.items():
        other = v[word]
        if other:
            factor = Fraction(1)
            for slot in word:
                factor *= sigma(slot)
            total += c * other * factor
    return total


def support_basis(elements: Sequence[LinComb]) -> list:
    """Sorted union of the supports of ``elements``."""
    keys = set()
    for element in elements:
        keys.update(element.keys())
    return sorted(keys, key=sort_key)


def coordinate_matrix(elements: Sequence[LinComb], basis: Sequence | None = None) -> sympy.Matrix:
    """One row per element, one column per basis key."""
    basis = support_basis(elements) if basis is None else list(basis)
    index = {key: j for j, key in enumerate(basis)}
    rows = []
    for element in elements:
        row = [sympy.Integer(0)] * len(basis)
        for key, c in element.items():
            if key not in index:
                raise ValueError(f"Basis does not contain {key}")
            row[index[key]] = sympy.Rational(c.numerator, c.denominator)
        rows.append(row)
    return sympy.Matrix(len(elements), len(basis), lambda i, j: rows[i][j])


def rank_of(elements: Sequence[LinComb]) -> int:
    if not elements or all(e.is_zero() for e in elements):
        return 0
    return coordinate_matrix(elements).rank()


def solve_in_span(target: LinComb, spanning: Sequence[LinComb]) -> list[Fraction]:
    """
    Coefficients ``c`` with ``Σ c_i spanning[i] = target``.

    Raises:
        ConventionError: target is outside the span, or the solution is not unique
    """
    basis = support_basis([*spanning, target])
    a = coordinate_matrix(spanning, basis).T
    b = coordinate_matrix([target], basis).T
    if a.rank() != len(spanning):
        raise ConventionError("Spanning set is linearly dependent")
    try:
        solution, params = a.gauss_jordan_solve(b)
    except ValueError as exc:
        raise ConventionError(f"Element is not in the span: {exc}")
    if params.shape[0]:
        raise ConventionError("Solution is not unique")
    return [Fraction(int(v.p), int(v.q)) for v in solution]


def nonzero_independent(candidates: Sequence[LinComb], start: Sequence[LinComb] = ()) -> list[int]:
    """Indices of candidates that extend ``start`` to a larger independent set, greedily."""
    chosen: list[LinComb] = list(start)
    kept = []
    current = rank_of(chosen)
    for i, candidate in enumerate(candidates):
        if candidate.is_zero():
            continue
        trial = rank_of([*chosen, candidate])
        if trial > current:
            chosen.append(candidate)
            kept.append(i)
            current = trial
    return kept
