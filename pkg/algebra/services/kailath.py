"""
The divided-powers Hopf algebra R[x1, x2, ...] and Kailath-Segall
polynomials, in the plain setting and transported into H_CK through
``x_n ↦ p^{⊤n}``.

Polynomials are LinCombs keyed by exponent tuples ``(a1, ..., ak)`` with no
trailing zeros; the unit monomial is ``()``.
"""

import logging
import math
from collections.abc import Iterator
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from common.config import check_weight

from ..structures.character import Character
from ..structures.forest import Forest, Tree, enumerate_forests
from ..structures.lincomb import LinComb
from . import hopf

logger = logging.getLogger(__name__)


def _trim(exponents) -> tuple[int, ...]:
    exponents = list(exponents)
    while exponents and exponents[-1] == 0:
        exponents.pop()
    return tuple(exponents)


def variable(n: int) -> tuple[int, ...]:
    """Monomial key of ``x_n``; ``x_0`` is the unit."""
    if n == 0:
        return ()
    return tuple([0] * (n - 1) + [1])


def monomial_degree(key: tuple[int, ...]) -> int:
    return sum((i + 1) * a for i, a in enumerate(key))


@lru_cache(maxsize=None)
def monomial_product(a: tuple[int, ...], b: tuple[int, ...]) -> LinComb:
    size = max(len(a), len(b))
    padded_a = a + (0,) * (size - len(a))
    padded_b = b + (0,) * (size - len(b))
    return LinComb.of(_trim(x + y for x, y in zip(padded_a, padded_b, strict=True)))


def poly_product(u: LinComb, v: LinComb) -> LinComb:
    result = LinComb()
    for a, ca in u.items():
        for b, cb in v.items():
            result.iadd_coef(ca * cb, monomial_product(a, b))
    return result


def poly_power(u: LinComb, k: int) -> LinComb:
    result = LinComb.of(())
    for _ in range(k):
        result = poly_product(result, u)
    return result


def _pair_product(left: LinComb, right: LinComb) -> LinComb:
    result = LinComb()
    for (a1, a2), ca in left.items():
        for (b1, b2), cb in right.items():
            for k1, c1 in monomial_product(a1, b1).items():
                for k2, c2 in monomial_product(a2, b2).items():
                    result.add_term((k1, k2), ca * cb * c1 * c2)
    return result


@lru_cache(maxsize=None)
def monomial_coproduct(key: tuple[int, ...]) -> LinComb:
    """``Δ x_n = Σ_j x_j ⊗ x_{n-j}``, extended multiplicatively."""
    result = LinComb.of(((), ()))
    for i, power in enumerate(key):
        n = i + 1
        split = LinComb(((variable(j), variable(n - j)), 1) for j in range(n + 1))
        for _ in range(power):
            result = _pair_product(result, split)
    return result


def divided_ops():
    from .morphisms import SideOps

    return SideOps(
        product=monomial_product,
        coproduct=monomial_coproduct,
        unit=(),
        degree=monomial_degree,
    )


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors ``a`` with ``a1 + 2 a2 + ... + n an = n``."""

    def rec(part: int, remaining: int) -> Iterator[list[int]]:
        if part > n:
            if remaining == 0:
                yield []
            return
        for count in range(remaining // part + 1):
            for rest in rec(part + 1, remaining - count * part):
                yield [count, *rest]

    for exponents in rec(1, n):
        yield _trim(exponents)


def ks_P(n: int) -> LinComb:  # noqa: N802
    """``P_n = e(x_n)`` by the closed partition sum."""
    result = LinComb()
    for a in partitions(n):
        total = sum(a)
        coeff = Fraction(
            (-1) ** (total - 1) * math.factorial(total - 1),
            math.prod(math.factorial(k) for k in a),
        )
        result.add_term(a, coeff)
    return result


def ks_x(n: int) -> LinComb:
    """``x_n = Σ ∏ P_i^{a_i}/a_i!`` as a polynomial in the P-variables."""
    result = LinComb()
    for a in partitions(n):
        result.add_term(a, Fraction(1, math.prod(math.factorial(k) for k in a)))
    return result


def substitute(poly: LinComb, values: dict[int, LinComb], product=poly_product) -> LinComb:
    """Replace variable ``i`` by ``values[i]`` in ``poly``."""
    result = LinComb()
    unit = next(iter(values.values()))
    for key, coeff in poly.items():
        term = None
        for i, power in enumerate(key):
            for _ in range(power):
                term = values[i + 1] if term is None else product(term, values[i + 1])
        if term is None:
            term = _unit_like(unit)
        result.iadd_coef(coeff, term)
    return result


def _unit_like(sample: LinComb) -> LinComb:
    key = next(iter(sample), ())
    if isinstance(key, Forest):
        return LinComb.of(Forest.unit())
    return LinComb.of(())


def to_sympy(poly: LinComb, prefix: str = "x") -> sympy.Expr:
    expr = sympy.Integer(0)
    for key, coeff in poly.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for i, power in enumerate(key):
            term *= sympy.Symbol(f"{prefix}{i + 1}") ** power
        expr += term
    return expr


def ks_substitution_check(n: int) -> bool:
    """Substituting the P_k into the expansion of x_n gives back x_n."""
    expr = to_sympy(ks_x(n), prefix="P")
    replacements = {sympy.Symbol(f"P{k}"): to_sympy(ks_P(k)) for k in range(1, n + 1)}
    return sympy.expand(expr.xreplace(replacements) - sympy.Symbol(f"x{n}")) == 0


def ks_recursion_check(n: int) -> bool:
    """``n x_n = Σ_{k=1}^n k P_k x_{n-k}``, exactly."""
    rhs = LinComb()
    for k in range(1, n + 1):
        rhs.iadd_coef(k, poly_product(ks_P(k), LinComb.of(variable(n - k))))
    return rhs == LinComb.of(variable(n), n)


def poly_text(poly: LinComb, prefix: str = "x") -> str:
    """Render with sympy's ordering, e.g. ``x2 - x1**2/2``."""
    return str(to_sympy(poly, prefix))


# ---------------------------------------------------------------------------
# Transport into H_CK
# ---------------------------------------------------------------------------


def top_power(p: LinComb, n: int) -> LinComb:
    """``p^{⊤n}``; the zeroth power is the unit."""
    return hopf.top(*([p] * n)) if n else LinComb.of(Forest.unit())


def transport(poly: LinComb, p: LinComb) -> LinComb:
    """Image of a divided-powers polynomial under ``x_n ↦ p^{⊤n}``."""
    degree = max((monomial_degree(k) for k in poly), default=0)
    powers = {n: top_power(p, n) for n in range(1, degree + 1)}
    if not powers:
        return LinComb.of(Forest.unit(), poly[()])
    return substitute(poly, powers, hopf.forest_product)


def branched_P(p: LinComb, n: int) -> LinComb:  # noqa: N802
    return transport(ks_P(n), p)


def branched_ks(p, n: int) -> dict:
    """
    Check both branched identities for ``p^{⊤n}`` in H_CK.

    Returns:
        A dict with the expansion defect, the recursion defect and whether
        every transported ``P_k`` is fixed by π
    """
    p = hopf.to_lincomb(p)
    check_weight(hopf.max_weight(p) * n)
    target = top_power(p, n)
    images = {k: branched_P(p, k) for k in range(1, n + 1)}
    expansion = substitute(ks_x(n), images, hopf.forest_product) - target
    recursion = LinComb()
    for k in range(1, n + 1):
        recursion.iadd_coef(
            Fraction(k, n), hopf.forest_product(images[k], top_power(p, n - k))
        )
    recursion -= target
    fixed = all(hopf.pi(images[k]) == images[k] for k in images)
    return {
        "expansion_defect": expansion,
        "recursion_defect": recursion,
        "pi_fixed": fixed,
        "P": images,
    }


def ladder_primitive(m: int) -> LinComb:
    """``π(r_m)`` with ``r_m`` the forest of m undecorated single nodes."""
    return hopf.pi(LinComb.of(Forest([Tree()] * m)))


def classical_ks_check(character: Character, m: int, n: int) -> float:
    """
    Residual of the classical recursion for ``⟨π(r_m)^{⊤n}, X⟩`` on a
    quasi-geometric character.
    """
    base = ladder_primitive(m)
    lhs = character.evaluate(top_power(base, n))
    values = [1.0]
    for j in range(1, n + 1):
        total = 0.0
        for k in range(1, j + 1):
            total += (
                (-1) ** (k - 1)
                * float(character.evaluate(ladder_primitive(m * k)))
                * values[j - k]
            )
        values.append(total / j)
    return abs(float(lhs) - values[n])


def _strict_sum(x: np.ndarray, powers: list[int]) -> float:
    """``Σ_{i1<...<ik} x_{i1}^{p1} ⋯ x_{ik}^{pk}`` by cumulative sums."""
    if not powers:
        return 1.0
    prev = np.ones(len(x))
    for j, power in enumerate(powers):
        shifted = np.concatenate(([1.0 if j == 0 else 0.0], prev[:-1]))
        prev = np.cumsum(shifted * x**power)
    return float(prev[-1])


def iterated_sums_character(
    increments, bound: int = 4, interval: tuple[float, float] = (0.0, 0.0)
) -> Character:
    """
    The discrete quasi-geometric lift of a scalar path: quasi-arborify each
    forest and evaluate words as strict iterated sums of increment powers.
    """
    from .morphisms import quasi_arborify

    x = np.asarray(increments, dtype=float)
    values = {}
    for forest in enumerate_forests(bound):
        total = 0.0
        for word, c in quasi_arborify(LinComb.of(forest)).items():
            total += float(c) * _strict_sum(x, [letter.weight for letter in word])
        values[forest] = total
    return Character(values, interval, bound)
