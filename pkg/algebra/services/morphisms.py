"""
Convolution calculus on graded connected Hopf algebras and the Hopf
isomorphisms between H_CK and shuffle algebras.

Every side is described by a product on basis keys, a coproduct on basis
keys, its unit key and a degree. The Eulerian idempotent, the antipode and
the Dynkin operator are written once against that description.
"""

import itertools
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from common.config import check_weight
from common.exceptions import ConventionError

from ..structures.character import Character
from ..structures.forest import Forest, Tree, forests_of_weight
from ..structures.lincomb import LinComb, tensor_product
from . import hopf
from .linalg import nonzero_independent

logger = logging.getLogger(__name__)

UNIT = Forest.unit()


class HopfSide(str, Enum):
    CK = "ck"
    GL = "gl"
    SHUFFLE = "shuffle"
    QSHUFFLE = "qshuffle"
    DIVIDED = "divided"


@dataclass(frozen=True)
class SideOps:
    product: Callable
    coproduct: Callable
    unit: object
    degree: Callable


# ---------------------------------------------------------------------------
# Words: shuffle, quasi-shuffle, deconcatenation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _shuffle_words(a: tuple, b: tuple) -> LinComb:
    if not a:
        return LinComb.of(b)
    if not b:
        return LinComb.of(a)
    result = LinComb()
    for word, c in _shuffle_words(a[:-1], b).items():
        result.add_term(word + a[-1:], c)
    for word, c in _shuffle_words(a, b[:-1]).items():
        result.add_term(word + b[-1:], c)
    return result


@lru_cache(maxsize=None)
def _quasi_shuffle_words(a: tuple, b: tuple) -> LinComb:
    if not a:
        return LinComb.of(b)
    if not b:
        return LinComb.of(a)
    result = LinComb()
    for word, c in _quasi_shuffle_words(a[:-1], b).items():
        result.add_term(word + a[-1:], c)
    for word, c in _quasi_shuffle_words(a, b[:-1]).items():
        result.add_term(word + b[-1:], c)
    for word, c in _quasi_shuffle_words(a[:-1], b[:-1]).items():
        result.add_term(word + (a[-1] * b[-1],), c)
    return result


def shuffle(u: LinComb, v: LinComb) -> LinComb:
    result = LinComb()
    for a, ca in u.items():
        for b, cb in v.items():
            result.iadd_coef(ca * cb, _shuffle_words(a, b))
    return result


def quasi_shuffle(u: LinComb, v: LinComb) -> LinComb:
    """Quasi-shuffle over letters in ⊙(U); merged letters multiply as forests."""
    result = LinComb()
    for a, ca in u.items():
        for b, cb in v.items():
            result.iadd_coef(ca * cb, _quasi_shuffle_words(a, b))
    return result


def _deconcatenation(word: tuple) -> LinComb:
    return LinComb(((word[:k], word[k:]), 1) for k in range(len(word) + 1))


def _word_degree(word: tuple) -> int:
    return sum(letter.weight for letter in word)


def side_ops(side: HopfSide) -> SideOps:
    side = HopfSide(side)
    if side is HopfSide.CK:
        return SideOps(
            product=lambda a, b: LinComb.of(a * b),
            coproduct=hopf._ck_forest,
            unit=UNIT,
            degree=lambda f: f.weight,
        )
    if side is HopfSide.GL:
        return SideOps(
            product=hopf._gl_product,
            coproduct=lambda f: hopf.gl_splits(f, 2, False),
            unit=UNIT,
            degree=lambda f: f.weight,
        )
    if side is HopfSide.SHUFFLE:
        return SideOps(_shuffle_words, _deconcatenation, (), _word_degree)
    if side is HopfSide.QSHUFFLE:
        return SideOps(_quasi_shuffle_words, _deconcatenation, (), _word_degree)
    from .kailath import divided_ops

    return divided_ops()


# ---------------------------------------------------------------------------
# Convolution calculus
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def reduced_iterated(side: HopfSide, key, k: int) -> LinComb:
    """``Δ̃^{(k)}`` on one basis key, with ``k+1`` legs."""
    ops = side_ops(side)
    if key == ops.unit:
        return LinComb()
    if k == 0:
        return LinComb.of((key,))
    result = LinComb()
    for (left, right), c in ops.coproduct(key).items():
        if left == ops.unit or right == ops.unit:
            continue
        for rest, d in reduced_iterated(side, right, k - 1).items():
            result.add_term((left, *rest), c * d)
    return result


def multiply(side: HopfSide, *factors: LinComb) -> LinComb:
    ops = side_ops(side)
    result = LinComb.of(ops.unit)
    for factor in factors:
        step = LinComb()
        for a, ca in result.items():
            for b, cb in factor.items():
                step.iadd_coef(ca * cb, ops.product(a, b))
        result = step
    return result


def _multiply_keys(side: HopfSide, legs: tuple) -> LinComb:
    return multiply(side, *(LinComb.of(leg) for leg in legs))


def _guard(side: HopfSide, x: LinComb) -> None:
    ops = side_ops(side)
    check_weight(max((ops.degree(k) for k in x), default=0))


@lru_cache(maxsize=None)
def _antipode(side: HopfSide, key) -> LinComb:
    ops = side_ops(side)
    if key == ops.unit:
        return LinComb.of(key)
    result = LinComb()
    for n in range(1, ops.degree(key) + 1):
        sign = -1 if n % 2 else 1
        for legs, c in reduced_iterated(side, key, n - 1).items():
            result.iadd_coef(sign * c, _multiply_keys(side, legs))
    return result


def antipode(h: LinComb, side: HopfSide = HopfSide.CK) -> LinComb:
    """Takeuchi's formula ``S = Σ_n (−1)^n m^{(n-1)} ∘ Δ̃^{(n-1)}``."""
    _guard(side, h)
    return h.linear_map(lambda key: _antipode(HopfSide(side), key))


@lru_cache(maxsize=None)
def _eulerian(side: HopfSide, key) -> LinComb:
    ops = side_ops(side)
    if key == ops.unit:
        return LinComb()
    result = LinComb()
    for n in range(1, ops.degree(key) + 1):
        coeff = Fraction((-1) ** (n - 1), n)
        for legs, c in reduced_iterated(side, key, n - 1).items():
            result.iadd_coef(coeff * c, _multiply_keys(side, legs))
    return result


def eulerian(h: LinComb, side: HopfSide = HopfSide.CK) -> LinComb:
    """``e = log_*(id) = Σ (−1)^{n-1}/n m^{(n-1)} ∘ Δ̃^{(n-1)}``."""
    _guard(side, h)
    return h.linear_map(lambda key: _eulerian(HopfSide(side), key))


@lru_cache(maxsize=None)
def _eulerian_n(side: HopfSide, key, n: int) -> LinComb:
    ops = side_ops(side)
    if n == 0:
        return LinComb.of(ops.unit) if key == ops.unit else LinComb()
    result = LinComb()
    for legs, c in reduced_iterated(side, key, n - 1).items():
        result.iadd_coef(c, multiply(side, *(_eulerian(side, leg) for leg in legs)))
    return result / math.factorial(n)


def eulerian_n(h: LinComb, n: int, side: HopfSide = HopfSide.CK) -> LinComb:
    """``e_n = e^{*n} / n!``; ``e_0`` is the projection onto the unit."""
    _guard(side, h)
    return h.linear_map(lambda key: _eulerian_n(HopfSide(side), key, n))


@lru_cache(maxsize=None)
def _dynkin(side: HopfSide, key) -> LinComb:
    ops = side_ops(side)
    result = LinComb()
    for (left, right), c in ops.coproduct(key).items():
        degree = ops.degree(right)
        if degree:
            result.iadd_coef(
                c * degree, multiply(side, _antipode(side, left), LinComb.of(right))
            )
    return result


def dynkin(h: LinComb, side: HopfSide = HopfSide.CK) -> LinComb:
    """Dynkin operator ``𝒟 = S * Y`` with ``Y`` the grading operator."""
    _guard(side, h)
    return h.linear_map(lambda key: _dynkin(HopfSide(side), key))


def convolution_identity_defect(side: HopfSide, key) -> LinComb:
    """``(S * id)(key) − ε(key)1``, zero for a correct antipode."""
    ops = side_ops(side)
    result = LinComb()
    for (left, right), c in ops.coproduct(key).items():
        result.iadd_coef(c, multiply(side, _antipode(side, left), LinComb.of(right)))
    if key == ops.unit:
        result.add_term(ops.unit, -1)
    return result


# ---------------------------------------------------------------------------
# Log and Exp between H_CK and the shuffle algebra over P
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pi_e(forest: Forest) -> LinComb:
    return hopf.pi(_eulerian(HopfSide.CK, forest))


@lru_cache(maxsize=None)
def _log(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb.of(())
    result = LinComb()
    for k in range(forest.weight):
        for word, c in hopf.ck_reduced_iterated(forest, k).items():
            result.iadd_coef(c, tensor_product(*(_pi_e(slot) for slot in word)))
    return result


def log_iso(h: LinComb) -> LinComb:
    """``Log = Σ_n (π ∘ e)^{⊗n} ∘ Δ̃^{(n-1)}``, a Hopf isomorphism onto ⧢(P)."""
    h = hopf.to_lincomb(h)
    hopf.guard(h)
    return h.linear_map(_log)


def exp_iso(w: LinComb) -> LinComb:
    """
    Inverse of Log, by peeling the longest words.

    Slots are projected onto P first. Each round takes the words of maximal
    length, whose Log image is themselves plus strictly shorter words.

    Raises:
        ConventionError: the maximal length failed to decrease
    """
    hopf.guard(w)
    remaining = hopf.pi_tensor(w)
    result = LinComb()
    previous = None
    while not remaining.is_zero():
        length = max(len(word) for word in remaining)
        if previous is not None and length >= previous:
            raise ConventionError(
                f"Exp did not reduce the word length below {previous}"
            )
        head = remaining.filter(lambda word: len(word) == length)
        grown = hopf.top_word(head)
        result += grown
        remaining -= log_iso(grown)
        previous = length
    return result


def log_without_eulerian(h: LinComb) -> LinComb:
    """``⊤^{-1}``, the coalgebra isomorphism that is not multiplicative."""
    return hopf.top_inverse(h)


@lru_cache(maxsize=None)
def _phi(forest: Forest) -> LinComb:
    # exp_* of (⊤^{-1} ∘ e) with shuffles in the target
    if forest.is_unit:
        return LinComb.of(())
    result = LinComb()
    for n in range(1, forest.weight + 1):
        for legs, c in hopf.ck_reduced_iterated(forest, n - 1).items():
            term = LinComb.of(())
            for leg in legs:
                term = shuffle(term, hopf.top_inverse(_eulerian(HopfSide.CK, leg)))
            result.iadd_coef(c / math.factorial(n), term)
    return result


def failed_attempts(bound: int = 4) -> dict:
    """
    Witnesses that neither ⊤^{-1} nor the algebra morphism agreeing with it on
    e(H) is a Hopf isomorphism.
    """
    dot = LinComb.of(Tree().as_forest())
    product_side = hopf.top_inverse(hopf.forest_product(dot, dot))
    shuffle_side = shuffle(hopf.top_inverse(dot), hopf.top_inverse(dot))
    report = {
        "top_inverse_multiplicative": product_side == shuffle_side,
        "top_inverse_defect": product_side - shuffle_side,
        "phi_coalgebra_defects": [],
    }
    for n in range(1, bound + 1):
        for forest in forests_of_weight(n):
            image = _phi(forest)
            lhs = LinComb()
            for word, c in image.items():
                for k in range(len(word) + 1):
                    lhs.add_term((word[:k], word[k:]), c)
            rhs = LinComb()
            for (left, right), c in hopf._ck_forest(forest).items():
                for a, ca in _phi(left).items():
                    for b, cb in _phi(right).items():
                        rhs.add_term((a, b), c * ca * cb)
            if lhs != rhs:
                report["phi_coalgebra_defects"].append(forest)
    logger.debug(
        f"Coalgebra defects of the e-based algebra morphism: "
        f"{len(report['phi_coalgebra_defects'])}"
    )
    return report


# ---------------------------------------------------------------------------
# Hoffman's exponential
# ---------------------------------------------------------------------------


def _compositions(n: int) -> Iterable[tuple[int, ...]]:
    for cuts in itertools.product((False, True), repeat=max(n - 1, 0)):
        sizes, run = [], 1
        for cut in cuts:
            if cut:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        yield tuple(sizes)


def _contract(word: tuple, sizes: tuple[int, ...]) -> tuple:
    out, start = [], 0
    for size in sizes:
        letter = UNIT
        for piece in word[start : start + size]:
            letter = letter * piece
        out.append(letter)
        start += size
    return tuple(out)


def _hoffman(w: LinComb, coefficient: Callable[[tuple[int, ...]], Fraction]) -> LinComb:
    result = LinComb()
    for word, c in w.items():
        if not word:
            result.add_term(word, c)
            continue
        for sizes in _compositions(len(word)):
            result.add_term(_contract(word, sizes), c * coefficient(sizes))
    return result


def hoffman_exp(w: LinComb) -> LinComb:
    """``Exp~``: blocks of consecutive letters contracted with ``1/(n1!⋯nk!)``."""
    return _hoffman(w, lambda sizes: Fraction(1, math.prod(map(math.factorial, sizes))))


def hoffman_log(w: LinComb) -> LinComb:
    """``Log~``: blocks contracted with ``(−1)^{n−k}/(n1⋯nk)``."""

    def coefficient(sizes):
        sign = (-1) ** (sum(sizes) - len(sizes))
        return Fraction(sign, math.prod(sizes))

    return _hoffman(w, coefficient)


# ---------------------------------------------------------------------------
# Arborification
# ---------------------------------------------------------------------------


def _letter(label: str) -> Forest:
    return Tree(label).as_forest()


@lru_cache(maxsize=None)
def _arborify_tree(tree: Tree, quasi: bool) -> LinComb:
    below = _arborify_forest(tree.children_forest(), quasi)
    return LinComb((word + (_letter(tree.label),), c) for word, c in below.items())


@lru_cache(maxsize=None)
def _arborify_forest(forest: Forest, quasi: bool) -> LinComb:
    product = _quasi_shuffle_words if quasi else _shuffle_words
    result = LinComb.of(())
    for tree in forest.trees:
        step = LinComb()
        for a, ca in result.items():
            for b, cb in _arborify_tree(tree, quasi).items():
                step.iadd_coef(ca * cb, product(a, b))
        result = step
    return result


def arborify(h: LinComb) -> LinComb:
    """𝔞: the algebra morphism to the shuffle algebra with ``𝔞([f]_γ) = 𝔞(f)⊗γ``."""
    return hopf.to_lincomb(h).linear_map(lambda f: _arborify_forest(f, False))


def quasi_arborify(h: LinComb) -> LinComb:
    """ã: the same recursion into the quasi-shuffle algebra over ⊙(U)."""
    return hopf.to_lincomb(h).linear_map(lambda f: _arborify_forest(f, True))


def iota(w: LinComb) -> LinComb:
    """Letters ``γ`` to nodes ``[γ]``, composed by ``⊤``: a right inverse of 𝔞."""
    return hopf.top_word(w)


def iota_tilde(w: LinComb) -> LinComb:
    """Letters ``γ1⊙⋯⊙γn`` to ``π([γ1]⋯[γn])``, composed by ``⊤``."""
    return hopf.top_word(hopf.pi_tensor(w))


def hoffman_diagram_defect(w: LinComb) -> LinComb:
    """``ã(Exp(ι̃ w)) − Exp~(w)`` for a tensor of edge-free letters."""
    return quasi_arborify(exp_iso(hopf.pi_tensor(w))) - hoffman_exp(w)


# ---------------------------------------------------------------------------
# Quasi-geometric obstructions
# ---------------------------------------------------------------------------


@dataclass
class BasisPrimitive:
    name: str
    element: LinComb
    weight: int
    kind: str  # "letter", "edge_free" or "edge"


@dataclass
class Obstruction:
    factors: tuple[BasisPrimitive, ...]
    element: LinComb = field(repr=False)
    value: float | Fraction | None = None

    @property
    def name(self) -> str:
        return hopf_top_name([f.name for f in self.factors])


def hopf_top_name(names: Sequence[str]) -> str:
    from .expressions import top_text

    return top_text(names)


@lru_cache(maxsize=None)
def primitive_basis(n: int, alphabet: tuple[str, ...] = ("",)) -> tuple[BasisPrimitive, ...]:
    """
    A basis of ``P^{(n)}``: the images of edge-free forests first, then the
    images of forests with edges that enlarge the span, preferring forests
    whose edges are spread over the most trees.
    """
    forests = forests_of_weight(n, alphabet)
    basis = []
    for forest in forests:
        if forest.edges == 0:
            kind = "letter" if n == 1 else "edge_free"
            name = forest.code if n == 1 else f"π({forest.code})"
            basis.append(BasisPrimitive(name, hopf.pi(LinComb.of(forest)), n, kind))
    edged = sorted(
        (f for f in forests if f.edges > 0),
        key=lambda f: (-sum(1 for t in f.trees if t.children), -len(f.trees), f.key),
    )
    images = [hopf.pi(LinComb.of(f)) for f in edged]
    for i in nonzero_independent(images, [b.element for b in basis]):
        basis.append(BasisPrimitive(f"π({edged[i].code})", images[i], n, "edge"))
    return tuple(basis)


def _weight_compositions(total: int) -> Iterable[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _weight_compositions(total - first):
            yield (first, *rest)


def quasi_geometric_obstructions(
    bound: int = 4, alphabet: Sequence[str] = ("",), geometric: bool = False
) -> list[Obstruction]:
    """
    ⊤-words of basis primitives with a forbidden factor, up to ``bound``.

    Args:
        bound: Largest total weight
        alphabet: Vertex labels
        geometric: Also forbid edge-free primitives with several nodes

    Returns:
        The obstructions in order of weight
    """
    check_weight(bound)
    labels = tuple(sorted(set(alphabet)))
    forbidden = {"edge", "edge_free"} if geometric else {"edge"}
    obstructions = []
    for total in range(1, bound + 1):
        for sizes in _weight_compositions(total):
            choices = [primitive_basis(size, labels) for size in sizes]
            for factors in itertools.product(*choices):
                if not any(f.kind in forbidden for f in factors):
                    continue
                element = hopf.top(*(f.element for f in factors))
                obstructions.append(Obstruction(tuple(factors), element))
    logger.debug(f"{len(obstructions)} obstructions up to weight {bound}")
    return obstructions


def check_character(
    character: Character,
    alphabet: Sequence[str] = ("",),
    tol: float = 0.0,
    geometric: bool = False,
) -> dict:
    """
    Evaluate every obstruction on a character.

    Returns:
        ``{"verdict": bool, "witnesses": [(name, value)], "checked": int}``
    """
    character.validate(tol)
    obstructions = quasi_geometric_obstructions(character.bound, alphabet, geometric)
    witnesses = []
    for obstruction in obstructions:
        obstruction.value = character.evaluate(obstruction.element)
        if abs(float(obstruction.value)) > tol:
            witnesses.append((obstruction.name, obstruction.value))
    return {
        "verdict": not witnesses,
        "witnesses": witnesses,
        "checked": len(obstructions),
    }
