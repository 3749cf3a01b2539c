"""
The scalar order-4 apparatus: bases of P^4 and Q^3, the free generating set
of H_CK^4 under the forest product, exact change of basis, and extension of
generator values to characters.

Polynomials in the generators are LinCombs keyed by sorted tuples of
generator indices; ``()`` is the constant monomial.
"""

import itertools
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from common.config import bound_scope
from common.constants import TEXT_TOP
from common.exceptions import CharacterError, ConventionError, ExpressionParseError
from common.utils import TermFormatter

from ..structures.character import Character, Number
from ..structures.forest import Forest, forests_of_weight
from ..structures.lincomb import LinComb
from . import hopf
from .expressions import parse_expression
from .linalg import rank_of, solve_in_span

logger = logging.getLogger(__name__)

ORDER = 4
UNDECORATED_LABELS = ("",)

GENERATOR_NAMES = (
    "[]",
    "π([] [])",
    "π([] [] [])",
    f"[] {TEXT_TOP} π([] [])",
    f"π([] [] []) {TEXT_TOP} []",
    f"π([] []) {TEXT_TOP} π([] [])",
    f"[] {TEXT_TOP} π([] [] [])",
    f"[] {TEXT_TOP} [] {TEXT_TOP} π([] [])",
)

P_BASIS_NAMES = ("[]", "π([] [])", "π([] [] [])", "π([] [] [] [])", "π([[]] [[]])")
Q_BASIS_NAMES = ("[]", "[] []", "[] * []", "[] * [] * []", "[] [] []", "[] * ([] [])", "([] []) * []")


@dataclass(frozen=True)
class Generator:
    index: int
    name: str
    element: LinComb = field(compare=False, repr=False)
    weight: int


@lru_cache(maxsize=1)
def generators() -> tuple[Generator, ...]:
    """The eight algebraically independent generators, by increasing weight."""
    with bound_scope(ORDER):
        found = []
        for i, name in enumerate(GENERATOR_NAMES):
            element = parse_expression(name)
            found.append(Generator(i, name, element, hopf.max_weight(element)))
    return tuple(found)


def monomials_of_weight(n: int) -> list[tuple[int, ...]]:
    """Sorted index tuples whose generator weights add up to ``n``."""
    gens = generators()
    found = []

    def rec(start: int, remaining: int, prefix: tuple[int, ...]):
        if remaining == 0:
            found.append(prefix)
            return
        for i in range(start, len(gens)):
            if gens[i].weight <= remaining:
                rec(i, remaining - gens[i].weight, prefix + (i,))

    rec(0, n, ())
    return found


@lru_cache(maxsize=None)
def monomial_element(monomial: tuple[int, ...]) -> LinComb:
    gens = generators()
    return hopf.product_many(*(gens[i].element for i in monomial))


@lru_cache(maxsize=1)
def change_of_basis() -> dict[Forest, LinComb]:
    """
    Every undecorated forest of weight at most 4 as a polynomial in the
    generators, solved exactly weight block by weight block.

    Raises:
        ConventionError: a weight block is singular
    """
    table: dict[Forest, LinComb] = {Forest.unit(): LinComb.of(())}
    for n in range(1, ORDER + 1):
        monomials = monomials_of_weight(n)
        forests = forests_of_weight(n, UNDECORATED_LABELS)
        if len(monomials) != len(forests):
            raise ConventionError(
                f"Weight {n} has {len(forests)} forests but {len(monomials)} monomials"
            )
        spanning = [monomial_element(m) for m in monomials]
        for forest in forests:
            coefficients = solve_in_span(LinComb.of(forest), spanning)
            table[forest] = LinComb(zip(monomials, coefficients, strict=True))
    logger.info(f"Order-4 change of basis solved for {len(table)} forests")
    return table


def evaluate_polynomial(poly: LinComb) -> LinComb:
    """Expand a generator polynomial back into the forest basis."""
    return poly.linear_map(monomial_element)


def generator_rank() -> int:
    """Rank of all generator monomials of weight at most 4."""
    elements = [monomial_element(m) for n in range(ORDER + 1) for m in monomials_of_weight(n)]
    return rank_of(elements)


def rewrite(x) -> LinComb:
    """Rewrite an element of H_CK^4 (d=1) as a generator polynomial."""
    x = hopf.to_lincomb(x)
    table = change_of_basis()
    result = LinComb()
    for forest, c in x.items():
        if forest not in table:
            raise ConventionError(f"{forest.code} is outside the order-4 undecorated basis")
        result.iadd_coef(c, table[forest])
    return result


def _factor_text(name: str, alone: bool) -> str:
    if alone or TEXT_TOP not in name:
        return name
    return f"({name})"


def monomial_text(monomial: tuple[int, ...]) -> str:
    if not monomial:
        return "1"
    gens = generators()
    alone = len(monomial) == 1
    return " ".join(_factor_text(gens[i].name, alone) for i in monomial)


def polynomial_text(poly: LinComb, fmt: str = "text") -> str:
    """e.g. ``1/2 [] [] − 1/2 π([] [])``"""
    terms = sorted(poly.items(), key=lambda item: (sum(generators()[i].weight for i in item[0]), item[0]))
    return TermFormatter.join([(c, monomial_text(m)) for m, c in terms], fmt=fmt, unit="1")


def basis_P4_Q3() -> dict:  # noqa: N802
    """
    Check the bases of ``P^4`` and ``Q^3``.

    Returns:
        A report with the basis elements, their ranks and the expected ranks
    """
    with bound_scope(ORDER):
        p_basis = [parse_expression(name) for name in P_BASIS_NAMES]
        images = [
            hopf.pi(LinComb.of(f))
            for n in range(1, ORDER + 1)
            for f in forests_of_weight(n, UNDECORATED_LABELS)
        ]
        p_rank = rank_of(p_basis)
        image_rank = rank_of(images)
        spanning = rank_of([*images, *p_basis]) == image_rank

        q_basis = [parse_gl(name) for name in Q_BASIS_NAMES]
        q_generators = [parse_expression(name) for name in ("[]", "[] []", "[] [] []")]
        q_fixed = all(hopf.pi_star(q) == q for q in q_generators)
        q_rank = rank_of(q_basis)
        q_dimension = sum(len(forests_of_weight(n, UNDECORATED_LABELS)) for n in range(1, 4))
    if p_rank != len(p_basis) or p_rank != image_rank or not spanning:
        raise ConventionError(f"P^4 basis rank {p_rank}, image rank {image_rank}")
    if q_rank != q_dimension or not q_fixed:
        raise ConventionError(f"Q^3 basis rank {q_rank}, expected {q_dimension}")
    return {
        "P": list(P_BASIS_NAMES),
        "Q": list(Q_BASIS_NAMES),
        "p_rank": p_rank,
        "q_rank": q_rank,
        "p_dimensions": {n: hopf.primitive_dimension(n, 1) for n in range(1, ORDER + 1)},
    }


def parse_gl(text: str) -> LinComb:
    """Parse a ``⋆``-word of forests written with ``*``."""
    parts = [parse_expression(part.strip()) for part in text.split("*")]
    return hopf.gl_star(*parts)


def cherry_pair_identity() -> dict:
    """
    ``π([[]] [[]])`` against its expression in the generators:
    ``1/3(π(•••)⊤• + •⊤π(•••) + π(••)π(••) − 2 π(••)⊤π(••) − π(•••)•)``.
    """
    with bound_scope(ORDER):
        lhs = parse_expression("π([[]] [[]])")
        rhs = parse_expression(
            "1/3 π([] [] []) ⊤ [] + 1/3 [] ⊤ π([] [] []) + 1/3 π([] []) π([] [])"
            " − 2/3 π([] []) ⊤ π([] []) − 1/3 π([] [] []) []"
        )
        reduced = hopf.ck_coproduct(lhs, reduced=True)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "holds": lhs == rhs,
        "primitive": reduced.is_zero(),
    }


def _generator_index(key) -> int:
    if isinstance(key, int):
        return key
    if isinstance(key, str) and key.isdigit():
        return int(key)
    gens = generators()
    for gen in gens:
        if key == gen.name:
            return gen.index
    try:
        with bound_scope(ORDER):
            element = parse_expression(str(key))
    except ExpressionParseError:
        raise CharacterError(f"Unknown generator {key!r}")
    for gen in gens:
        if element == gen.element:
            return gen.index
    raise CharacterError(f"{key!r} is not one of the order-4 generators")


def extend_character(
    values: Mapping, interval: tuple[float, float] = (0.0, 0.0)
) -> Character:
    """
    The unique character on H_CK^4 (d=1) with the given generator values.

    Args:
        values: Generator index or name (any parseable spelling) to value;
            all eight generators must be present
        interval: The pair ``(s, t)`` the values belong to

    Returns:
        A multiplicative Character of bound 4
    """
    by_index: dict[int, Number] = {}
    for key, value in values.items():
        by_index[_generator_index(key)] = value
    missing = [g.name for g in generators() if g.index not in by_index]
    if missing:
        raise CharacterError(f"Missing generator values: {', '.join(missing)}")
    character_values: dict[Forest, Number] = {}
    for forest, poly in change_of_basis().items():
        total: Number = 0
        for monomial, c in poly.items():
            term: Number = 1
            for i in monomial:
                term *= by_index[i]
            total += (float(c) if isinstance(term, float) else c) * term
        character_values[forest] = total
    return Character(character_values, interval, ORDER)


def generator_values(character: Character) -> dict[str, Number]:
    """Values of a character on the eight generators."""
    return {g.name: character.evaluate(g.element) for g in generators()}


def multiplicative_pairs(character: Character, tol: float = 0.0) -> list[tuple[str, str, float]]:
    """Pairs ``(f, g)`` with ``|f| + |g| ≤ 4`` where ``X(fg) ≠ X(f) X(g)``."""
    defects = []
    forests = [f for n in range(1, ORDER) for f in forests_of_weight(n, UNDECORATED_LABELS)]
    for f, g in itertools.combinations_with_replacement(forests, 2):
        if f.weight + g.weight > ORDER:
            continue
        gap = abs(float(character[f * g] - character[f] * character[g]))
        if gap > tol:
            defects.append((f.code, g.code, gap))
    return defects


def reference_identities() -> dict[str, str]:
    """Tree expansions in the generators as commonly displayed, keyed by tree."""
    return {
        "[[]]": "1/2 [] [] − 1/2 π([] [])",
        "[[[]]]": "1/6 [] [] [] − 1/2 π([] []) [] + 1/3 π([] [] [])",
        "[[][]]": "1/3 [] [] [] − [] ⊤ π([] []) − 1/3 π([] [] [])",
        "[[[[]]]]": (
            "1/24 [] [] [] [] + 1/6 π([] [] []) [] + 1/24 π([] []) π([] [])"
            " + 1/6 π([] []) ⊤ π([] []) − 1/4 [] [] π([] []) + 1/6 π([] [] []) ⊤ []"
            " + 1/6 [] ⊤ π([] [] [])"
        ),
        "[[[]][]]": (
            "1/8 [] [] [] [] − 1/4 [] [] π([] []) − 1/24 π([] []) π([] [])"
            " − 1/6 π([] []) ⊤ π([] []) − 1/6 π([] [] []) ⊤ [] − 1/6 [] ⊤ π([] [] [])"
            " + 1/6 π([] [] []) [] − [] ⊤ [] ⊤ π([] [])"
        ),
        "[[[][]]]": (
            "1/12 [] [] [] [] − 1/3 π([] [] []) [] + 1/4 π([] []) π([] [])"
            " + [] ⊤ [] ⊤ π([] []) − ([] ⊤ π([] [])) [] + [] ⊤ π([] [] [])"
        ),
    }


def check_reference_identities() -> dict[str, bool]:
    """Whether each displayed expansion reproduces its tree exactly."""
    results = {}
    with bound_scope(ORDER):
        for tree, expansion in reference_identities().items():
            results[tree] = parse_expression(expansion) == parse_expression(tree)
    return results
