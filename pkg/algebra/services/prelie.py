"""
Symbolic calculus in the free symmetric brace algebra over the generators
``F_q``, one per forest ``q``.

Elements reuse Tree/Forest: a vertex label is the code of its generator
forest, a tree is an iterated brace ``F_{q1} ▷ F_{q2}`` and a forest is a
``⊙``-monomial. Grafting every tree of ``A`` onto vertices of ``B`` is the
symmetric brace ``A ▷ B``; letting trees of ``A`` also stay is the
Oudom-Guin product ``A ⊛ B``, which is the Grossman-Larson product on these
labelled forests.
"""

import itertools
import logging
import math
import threading
from fractions import Fraction
from functools import lru_cache

from sympy.utilities.iterables import multiset_partitions

from common.config import check_weight
from common.utils import CoefficientHelper, TermFormatter

from ..structures.forest import Forest, Tree, enumerate_forests, sigma
from ..structures.lincomb import LinComb, bilinear
from . import hopf
from .expressions import key_latex

logger = logging.getLogger(__name__)

_registry_lock = threading.Lock()
_generators: dict[str, Forest] = {}

UNIT = Forest.unit()
BRACE = "▷"
ODOT = "⊙"


def generator(q: Forest) -> Tree:
    """The single-vertex tree carrying ``F_q``."""
    if q.is_unit:
        raise ValueError("F is not indexed by the unit forest")
    with _registry_lock:
        _generators.setdefault(q.code, q)
    return Tree(q.code)


def generator_forest(label: str) -> Forest:
    return _generators[label]


def F(x) -> LinComb:  # noqa: N802
    """``F_x`` extended linearly over a combination of forests."""
    x = hopf.to_lincomb(x)
    return x.linear_map(lambda q: LinComb.of(generator(q).as_forest()))


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _brace(a: Forest, b: Forest) -> LinComb:
    if a.is_unit:
        return LinComb.of(b)
    result = LinComb()
    if b.is_unit:
        return result
    targets = hopf.forest_vertices(b)
    for choice in itertools.product(targets, repeat=len(a.trees)):
        attachments: dict = {}
        for tree, target in zip(a.trees, choice, strict=True):
            attachments.setdefault(target, []).append(tree)
        result.add_term(hopf.graft_onto(b, attachments), 1)
    return result


def brace(a, b) -> LinComb:
    """``A ▷ B``: every tree of A is grafted onto some vertex of B."""
    return bilinear(hopf.to_lincomb(a), hopf.to_lincomb(b), _brace)


def graft(a, b) -> LinComb:
    """Pre-Lie product of trees, ``a ▷ b`` summed over the vertices of b."""
    return brace(a, b)


def odot(*xs) -> LinComb:
    return hopf.product_many(*xs)


def og_product(a, b) -> LinComb:
    """Oudom-Guin product ``A ⊛ B``."""
    return hopf.gl_product(a, b)


def og_many(*xs) -> LinComb:
    return hopf.gl_star(*xs)


def right_nested(xs: list[LinComb]) -> LinComb:
    """``x1 ▷ (x2 ▷ (... ▷ xk))``."""
    result = xs[-1]
    for x in reversed(xs[:-1]):
        result = brace(x, result)
    return result


def star_symmetric(xs: list[LinComb]) -> LinComb:
    """
    Product ``x1 ⊛ ... ⊛ xn`` of primitive elements by the set-partition
    formula: the sum over partitions of ``⊙`` of right-nested braces taken
    in increasing index order inside each block.
    """
    if not xs:
        return LinComb.of(UNIT)
    result = LinComb()
    for blocks in multiset_partitions(list(range(len(xs)))):
        result += odot(*(right_nested([xs[i] for i in block]) for block in blocks))
    return result


# ---------------------------------------------------------------------------
# Modified vector fields and differential operators
# ---------------------------------------------------------------------------


def _split_sum(forest: Forest, part) -> LinComb:
    """``Σ_n 1/n! Σ part(h1) ⊙ ... ⊙ part(hn)`` over ordered GL splittings."""
    result = LinComb()
    for n in range(1, len(forest.trees) + 1):
        scale = Fraction(1, math.factorial(n))
        for word, count in hopf.gl_splits(forest, n, True).items():
            result.iadd_coef(scale * count, odot(*(part(slot) for slot in word)))
    return result


@lru_cache(maxsize=None)
def _f_hat(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb()
    result = F(hopf.pi_star(forest))
    for (cut, rest), c in hopf.snip_coproduct(forest).items():
        inner = _split_sum(cut, _f_hat)
        result.iadd_coef(c, brace(inner, F(hopf.pi_star(rest))))
    return result


@lru_cache(maxsize=None)
def _f_bold(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb.of(UNIT)
    return _split_sum(forest, _f_hat)


def f_hat(h) -> LinComb:
    """
    Modified vector field ``F̂_h`` of an element of H_GL.

    ``F̂_h = F_{π*(h)} + Σ c (Σ_n 1/n! F̂_{h1} ⊙ ... ⊙ F̂_{hn}) ▷ F_{π*(h0)}``
    where ``c (h' ⊗ h0)`` runs over the snips of h and ``h1 ... hn`` over the
    splittings of the cut part ``h'``.
    """
    h = hopf.to_lincomb(h)
    hopf.guard(h)
    return h.linear_map(_f_hat)


def f_bold(h) -> LinComb:
    """Differential operator ``𝐅_h``; ``𝐅_1`` is the unit."""
    h = hopf.to_lincomb(h)
    hopf.guard(h)
    return h.linear_map(_f_bold)


def single_node_part(x: LinComb) -> LinComb:
    """Drop every monomial using some ``F_q`` with q not a single node."""

    def simple(forest: Forest) -> bool:
        return all(_generators[label].weight == 1 for label in forest.labels)

    return x.filter(simple)


def as_vector_fields(tree: Tree) -> Tree:
    """The brace tree of the same shape, vertex label γ carrying ``F_{[γ]}``."""
    return Tree(
        generator(Tree(tree.label).as_forest()).label,
        (as_vector_fields(child) for child in tree.children),
    )


def davie_table(level: int, alphabet=("",)) -> dict[Forest, LinComb]:
    """Coefficients ``σ(f)^{-1} F̂_f`` of the Davie expansion up to ``level``."""
    check_weight(level)
    table = {}
    for forest in enumerate_forests(level, alphabet):
        table[forest] = _f_hat(forest) / sigma(forest)
    logger.debug(f"Davie table with {len(table)} entries up to weight {level}")
    return table


def ito_table(level: int, alphabet=("",)) -> dict[Forest, LinComb]:
    """Operators ``𝐅_f`` of the change-of-variable formula up to ``level``."""
    check_weight(level)
    return {forest: _f_bold(forest) for forest in enumerate_forests(level, alphabet)}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def generator_text(label: str, fmt: str = "text") -> str:
    q = _generators[label]
    if fmt == "latex":
        if q.edges == 0:
            body = " ".join(t.label or "\\bullet" for t in q.trees)
        else:
            body = key_latex(q)
        return f"F_{{{body}}}"
    body = "".join(t.label or "•" for t in q.trees) if q.edges == 0 else q.code
    return f"F_{body}" if len(body) == 1 else f"F_{{{body}}}"


def _tree_text(tree: Tree, fmt: str) -> str:
    root = generator_text(tree.label, fmt)
    if not tree.children:
        return root
    brace_sym = " \\rhd " if fmt == "latex" else f" {BRACE} "
    odot_sym = " \\odot " if fmt == "latex" else f" {ODOT} "
    parts = [_wrapped(child, fmt) for child in tree.children]
    left = parts[0] if len(parts) == 1 else "(" + odot_sym.join(parts) + ")"
    return f"{left}{brace_sym}{root}"


def _wrapped(tree: Tree, fmt: str) -> str:
    text = _tree_text(tree, fmt)
    return f"({text})" if tree.children else text


def monomial_text(forest: Forest, fmt: str = "text") -> str:
    if forest.is_unit:
        return "1"
    odot_sym = " \\odot " if fmt == "latex" else f" {ODOT} "
    if len(forest.trees) == 1:
        return _tree_text(forest.trees[0], fmt)
    return odot_sym.join(_wrapped(tree, fmt) for tree in forest.trees)


def format_element(x: LinComb, fmt: str = "text") -> str:
    """Render a brace-algebra element, e.g. ``F_β ▷ F_α − F_{αβ}``."""
    terms = [(c, monomial_text(k, fmt)) for k, c in x.terms()]
    return TermFormatter.join(terms, fmt="latex" if fmt == "latex" else "text", unit="1")


def table_lines(table: dict[Forest, LinComb], fmt: str = "text") -> list[str]:
    lines = []
    for forest, value in table.items():
        if fmt == "latex":
            lines.append(f"X^{{{key_latex(forest)}}} & {format_element(value, fmt)} \\\\")
        else:
            lines.append(f"{forest.code}: {format_element(value)}")
    return lines


def element_json(x: LinComb) -> list[dict]:
    return [
        {"coeff": CoefficientHelper.text(c), "monomial": monomial_text(k)}
        for k, c in x.terms()
    ]
