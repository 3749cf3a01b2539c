"""
The Connes-Kreimer and Grossman-Larson Hopf structures on decorated forests.

Conventions:
- CK coproducts put the pruned part on the left leg and the trunk on the
  right, and iterate as ``(id ⊗ Δ̃^{(n-1)}) ∘ Δ̃``.
- Natural growth ``⊤`` grafts all roots of the left argument onto one common
  vertex of the right argument, averaged over its vertices; n-fold growth is
  composed from the left.
- Snips put the cut-off part on the left leg, carry the factor ``1/|g|`` for
  the remainder ``g`` and iterate on the left.

Tensors are LinCombs keyed by tuples of forests, one forest per slot.
"""

import itertools
import logging
from collections.abc import Iterable, Iterator
from fractions import Fraction
from functools import lru_cache

from common.config import check_weight

from ..structures.forest import Forest, Tree, forests_of_weight
from ..structures.lincomb import LinComb, bilinear, tensor_product

logger = logging.getLogger(__name__)

UNIT = Forest.unit()


def to_lincomb(x) -> LinComb:
    if isinstance(x, LinComb):
        return x
    if isinstance(x, Tree):
        return LinComb.of(x.as_forest())
    if isinstance(x, Forest):
        return LinComb.of(x)
    raise TypeError(f"Cannot interpret {type(x).__name__} as a linear combination")


def key_weight(key) -> int:
    if isinstance(key, Forest):
        return key.weight
    return sum(part.weight for part in key)


def max_weight(x: LinComb) -> int:
    return max((key_weight(k) for k in x), default=0)


def guard(*elements: LinComb) -> None:
    """Reject inputs whose combined weight exceeds the active bound."""
    check_weight(sum(max_weight(e) for e in elements))


def homogeneous_part(x: LinComb, n: int) -> LinComb:
    return x.filter(lambda key: key_weight(key) == n)


def counit(x: LinComb) -> Fraction:
    return x[UNIT]


# ---------------------------------------------------------------------------
# Vertex addressing and grafting
# ---------------------------------------------------------------------------


def vertex_paths(tree: Tree, prefix: tuple = ()) -> Iterator[tuple]:
    yield prefix
    for i, child in enumerate(tree.children):
        yield from vertex_paths(child, prefix + (i,))


def attach(tree: Tree, attachments: dict, prefix: tuple = ()) -> Tree:
    """Rebuild ``tree`` with extra children hung at the addressed vertices."""
    kids = [attach(c, attachments, prefix + (i,)) for i, c in enumerate(tree.children)]
    kids.extend(attachments.get(prefix, ()))
    return Tree(tree.label, kids)


def forest_vertices(forest: Forest) -> list[tuple[int, tuple]]:
    return [(j, path) for j, tree in enumerate(forest.trees) for path in vertex_paths(tree)]


def graft_onto(forest: Forest, attachments: dict[tuple[int, tuple], list]) -> Forest:
    by_tree: dict[int, dict] = {}
    for (j, path), trees in attachments.items():
        by_tree.setdefault(j, {}).setdefault(path, []).extend(trees)
    trees = [
        attach(tree, by_tree[j]) if j in by_tree else tree
        for j, tree in enumerate(forest.trees)
    ]
    return Forest(trees)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def forest_product(u, v) -> LinComb:
    """Commutative product: multiset union of forests, extended bilinearly."""
    return bilinear(to_lincomb(u), to_lincomb(v), lambda a, b: LinComb.of(a * b))


def product_many(*xs) -> LinComb:
    result = LinComb.of(UNIT)
    for x in xs:
        result = forest_product(result, x)
    return result


@lru_cache(maxsize=None)
def _natural_growth(f: Forest, g: Forest) -> LinComb:
    if g.is_unit:
        return LinComb.of(f)
    if f.is_unit:
        return LinComb.of(g)
    result = LinComb()
    share = Fraction(1, g.weight)
    for vertex in forest_vertices(g):
        result.add_term(graft_onto(g, {vertex: list(f.trees)}), share)
    return result


def natural_growth(u, v) -> LinComb:
    """Binary ``u ⊤ v``."""
    return bilinear(to_lincomb(u), to_lincomb(v), _natural_growth)


def top(*xs) -> LinComb:
    """Left-composed ``x1 ⊤ x2 ⊤ ... ⊤ xn``; the empty composition is 1."""
    if not xs:
        return LinComb.of(UNIT)
    result = to_lincomb(xs[0])
    for x in xs[1:]:
        result = natural_growth(result, x)
    return result


@lru_cache(maxsize=None)
def _top_word(word: tuple) -> LinComb:
    if not word:
        return LinComb.of(UNIT)
    return _natural_growth_lc(_top_word(word[:-1]), word[-1])


def _natural_growth_lc(left: LinComb, g: Forest) -> LinComb:
    result = LinComb()
    for f, c in left.items():
        result.iadd_coef(c, _natural_growth(f, g))
    return result


def top_word(tensor: LinComb) -> LinComb:
    """The coalgebra map ``⊤ : ⊗(H) → H`` applied slotwise from the left."""
    return tensor.linear_map(_top_word)


@lru_cache(maxsize=None)
def _gl_product(f: Forest, g: Forest) -> LinComb:
    if f.is_unit:
        return LinComb.of(g)
    if g.is_unit:
        return LinComb.of(f)
    targets = [None, *forest_vertices(g)]
    result = LinComb()
    for choice in itertools.product(targets, repeat=len(f.trees)):
        staying = []
        attachments: dict = {}
        for tree, target in zip(f.trees, choice, strict=True):
            if target is None:
                staying.append(tree)
            else:
                attachments.setdefault(target, []).append(tree)
        grown = graft_onto(g, attachments)
        result.add_term(Forest(grown.trees + tuple(staying)), 1)
    return result


def gl_product(u, v) -> LinComb:
    """Grossman-Larson product ``u ⋆ v``: each tree of u stays or grafts onto v."""
    return bilinear(to_lincomb(u), to_lincomb(v), _gl_product)


def gl_star(*xs) -> LinComb:
    result = LinComb.of(UNIT)
    for x in xs:
        result = gl_product(result, x)
    return result


# ---------------------------------------------------------------------------
# Connes-Kreimer coproduct
# ---------------------------------------------------------------------------


def _multiply_pairs(left: LinComb, right: LinComb) -> LinComb:
    result = LinComb()
    for (a1, a2), ca in left.items():
        for (b1, b2), cb in right.items():
            result.add_term((a1 * b1, a2 * b2), ca * cb)
    return result


@lru_cache(maxsize=None)
def _ck_tree(tree: Tree) -> LinComb:
    # Δ B+(f) = B+(f) ⊗ 1 + (id ⊗ B+) Δ f
    result = LinComb.of((tree.as_forest(), UNIT))
    for (pruned, trunk), c in _ck_forest(tree.children_forest()).items():
        result.add_term((pruned, Tree(tree.label, trunk.trees).as_forest()), c)
    return result


@lru_cache(maxsize=None)
def _ck_forest(forest: Forest) -> LinComb:
    result = LinComb.of((UNIT, UNIT))
    for tree in forest.trees:
        result = _multiply_pairs(result, _ck_tree(tree))
    return result


@lru_cache(maxsize=None)
def _ck_reduced(forest: Forest) -> LinComb:
    return _ck_forest(forest).filter(lambda k: not k[0].is_unit and not k[1].is_unit)


@lru_cache(maxsize=None)
def ck_reduced_iterated(forest: Forest, k: int) -> LinComb:
    """``Δ̃^{(k)}`` with ``k+1`` legs, iterated on the right."""
    if k == 0:
        return LinComb.of((forest,)) if not forest.is_unit else LinComb()
    result = LinComb()
    for (left, right), c in _ck_reduced(forest).items():
        for rest, d in ck_reduced_iterated(right, k - 1).items():
            result.add_term((left, *rest), c * d)
    return result


@lru_cache(maxsize=None)
def _ck_full_iterated(forest: Forest, k: int) -> LinComb:
    if k == 0:
        return LinComb.of((forest,))
    result = LinComb()
    for (left, right), c in _ck_forest(forest).items():
        for rest, d in _ck_full_iterated(right, k - 1).items():
            result.add_term((left, *rest), c * d)
    return result


def ck_coproduct(x, reduced: bool = False, iterate: int = 1) -> LinComb:
    """
    Connes-Kreimer coproduct by admissible cuts.

    Args:
        x: Element of H_CK
        reduced: Drop the terms with a unit leg
        iterate: Number of coproduct applications; the result has
            ``iterate + 1`` legs

    Returns:
        Tensor with pruned parts to the left of trunks
    """
    x = to_lincomb(x)
    guard(x)
    if reduced:
        return x.linear_map(lambda f: ck_reduced_iterated(f, iterate))
    return x.linear_map(lambda f: _ck_full_iterated(f, iterate))


# ---------------------------------------------------------------------------
# Grossman-Larson coproduct
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def gl_splits(forest: Forest, parts: int, nonempty: bool = True) -> LinComb:
    """All ordered distributions of the trees of ``forest`` into ``parts`` legs."""
    result = LinComb()
    trees = forest.trees
    for assignment in itertools.product(range(parts), repeat=len(trees)):
        legs: list[list[Tree]] = [[] for _ in range(parts)]
        for tree, leg in zip(trees, assignment, strict=True):
            legs[leg].append(tree)
        if nonempty and any(not leg for leg in legs):
            continue
        result.add_term(tuple(Forest(leg) for leg in legs), 1)
    return result


def gl_coproduct(x, reduced: bool = False) -> LinComb:
    """Cocommutative unshuffle of the trees; trees are GL-primitive."""
    x = to_lincomb(x)
    guard(x)
    if reduced:
        return x.linear_map(lambda f: gl_splits(f, 2, True))
    return x.linear_map(lambda f: gl_splits(f, 2, False))


# ---------------------------------------------------------------------------
# Primitive projection π and the inverse of ⊤
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pi(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb()
    result = LinComb.of(forest)
    for (left, right), c in _ck_reduced(forest).items():
        result.iadd_coef(-c, natural_growth(LinComb.of(left), _pi(right)))
    return result


def pi(x) -> LinComb:
    """Primitive projection ``π = id − ⊤ ∘ (id ⊗ π) ∘ Δ̃``."""
    x = to_lincomb(x)
    guard(x)
    return x.linear_map(_pi)


def pi_tensor(tensor: LinComb) -> LinComb:
    """``π^{⊗n}`` applied slot by slot."""
    result = LinComb()
    for word, c in tensor.items():
        result.iadd_coef(c, tensor_product(*(_pi(slot) for slot in word)))
    return result


@lru_cache(maxsize=None)
def _top_inverse(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb.of(())
    result = LinComb()
    for k in range(forest.weight):
        result += pi_tensor(ck_reduced_iterated(forest, k))
    return result


def top_inverse(x) -> LinComb:
    """``⊤^{-1} = Σ_n π^{⊗n} ∘ Δ̃^{(n-1)}``, a tensor over primitives."""
    x = to_lincomb(x)
    guard(x)
    return x.linear_map(_top_inverse)


def pi_m(x, m: int) -> LinComb:
    """Projection onto ``P^{⊤m}``: ``⊤ ∘ π^{⊗m} ∘ Δ̃^{(m-1)}``."""
    x = to_lincomb(x)
    guard(x)
    if m == 0:
        return LinComb.of(UNIT, counit(x))
    return x.linear_map(lambda f: top_word(pi_tensor(ck_reduced_iterated(f, m - 1))))


def primitiveness_parts(x) -> dict[int, LinComb]:
    """Every non-zero ``π_m(x)`` keyed by ``m``."""
    x = to_lincomb(x)
    return {
        m: part
        for m in range(0, max_weight(x) + 1)
        if not (part := pi_m(x, m)).is_zero()
    }


@lru_cache(maxsize=None)
def _r_operator(word: tuple) -> LinComb:
    if len(word) == 1:
        return LinComb.of(word[0])
    return natural_growth(LinComb.of(word[0]), _r_operator(word[1:]))


def r_operator(tensor: LinComb) -> LinComb:
    """``R_n(f0 ⊗ ... ⊗ fn) = f0 ⊤ R_{n-1}(f1 ⊗ ...)``, composed on the right."""
    return tensor.linear_map(_r_operator)


@lru_cache(maxsize=None)
def _pi_nonrecursive(forest: Forest) -> LinComb:
    result = LinComb()
    for k in range(1, forest.weight + 1):
        sign = 1 if k % 2 == 1 else -1
        result.iadd_coef(sign, r_operator(ck_reduced_iterated(forest, k - 1)))
    return result


def pi_nonrecursive(x) -> LinComb:
    """``π = Σ_k (−1)^{k+1} R_k ∘ Δ̃^{(k-1)}``."""
    x = to_lincomb(x)
    guard(x)
    return x.linear_map(_pi_nonrecursive)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@lru_cache(maxsize=None)
def _top_inverse_nonrecursive(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb.of(())
    result = LinComb()
    for k in range(1, forest.weight + 1):
        legs = ck_reduced_iterated(forest, k - 1)
        for n in range(1, k + 1):
            sign = 1 if (k + n) % 2 == 0 else -1
            for sizes in _compositions(k, n):
                for word, c in legs.items():
                    blocks, start = [], 0
                    for size in sizes:
                        blocks.append(_r_operator(word[start : start + size]))
                        start += size
                    result.iadd_coef(sign * c, tensor_product(*blocks))
    return result


def top_inverse_nonrecursive(x) -> LinComb:
    """``⊤^{-1}`` through block sums of R operators."""
    x = to_lincomb(x)
    guard(x)
    return x.linear_map(_top_inverse_nonrecursive)


# ---------------------------------------------------------------------------
# Snips, π* and the dual side
# ---------------------------------------------------------------------------


def _snip_tree(tree: Tree) -> Iterator[tuple[list[Tree], Tree]]:
    """Yield (cut subtrees, remaining tree) for every snip inside ``tree``."""
    n = len(tree.children)
    for size in range(1, n + 1):
        for chosen in itertools.combinations(range(n), size):
            cut = [tree.children[i] for i in chosen]
            kept = [c for i, c in enumerate(tree.children) if i not in chosen]
            yield cut, Tree(tree.label, kept)
    for i, child in enumerate(tree.children):
        others = tree.children[:i] + tree.children[i + 1 :]
        for cut, rest in _snip_tree(child):
            yield cut, Tree(tree.label, (*others, rest))


@lru_cache(maxsize=None)
def _snips(forest: Forest) -> LinComb:
    result = LinComb()
    for j, tree in enumerate(forest.trees):
        others = forest.trees[:j] + forest.trees[j + 1 :]
        for cut, rest in _snip_tree(tree):
            remainder = Forest((*others, rest))
            result.add_term((Forest(cut), remainder), Fraction(1, remainder.weight))
    return result


@lru_cache(maxsize=None)
def _snips_iterated(forest: Forest, n: int) -> LinComb:
    if n == 0:
        return LinComb.of((forest,))
    result = LinComb()
    for (cut, rest), c in _snips(forest).items():
        for word, d in _snips_iterated(cut, n - 1).items():
            result.add_term((*word, rest), c * d)
    return result


def snip_coproduct(x, iterate: int = 1) -> LinComb:
    """``Δ̃_⊤`` (left-iterated ``iterate`` times), adjoint to ``⊤``."""
    x = to_lincomb(x)
    guard(x)
    return x.linear_map(lambda f: _snips_iterated(f, iterate))


@lru_cache(maxsize=None)
def _pi_star(forest: Forest) -> LinComb:
    if forest.is_unit:
        return LinComb()
    result = LinComb.of(forest)
    for (cut, rest), c in _snips(forest).items():
        result.iadd_coef(-c, gl_product(LinComb.of(cut), _pi_star(rest)))
    return result


def pi_star(x) -> LinComb:
    """Dual projection ``π* = id − ⋆ ∘ (id ⊗ π*) ∘ Δ̃_⊤``."""
    x = to_lincomb(x)
    guard(x)
    return x.linear_map(_pi_star)


def pi_star_n(x, n: int) -> LinComb:
    """``⋆^{(n-1)} ∘ π*^{⊗n} ∘ Δ̃_⊤^{(n-1)}``."""
    x = to_lincomb(x)
    guard(x)
    if n == 0:
        return LinComb.of(UNIT, counit(x))

    def one(f: Forest) -> LinComb:
        result = LinComb()
        for word, c in _snips_iterated(f, n - 1).items():
            result.iadd_coef(c, gl_star(*(_pi_star(slot) for slot in word)))
        return result

    return x.linear_map(one)


def top_star(tensor: LinComb) -> LinComb:
    """``q1 ⊗ ... ⊗ qn ↦ q1 ⋆ ... ⋆ qn``."""
    return tensor.linear_map(lambda word: gl_star(*(LinComb.of(s) for s in word)))


# ---------------------------------------------------------------------------
# The B∞ product on ⊗(P)
# ---------------------------------------------------------------------------


def binf_product(u: LinComb, v: LinComb) -> LinComb:
    """Forest product transported through ``⊤``: ``⊤^{-1}(⊤u · ⊤v)``."""
    return top_inverse(forest_product(top_word(u), top_word(v)))


def _block_pairs(m: int, n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    if m == 0 and n == 0:
        yield ()
        return
    for a in range(m + 1):
        for b in range(n + 1):
            if a == 0 and b == 0:
                continue
            for rest in _block_pairs(m - a, n - b):
                yield ((a, b), *rest)


def binf_product_closed(u: LinComb, v: LinComb) -> LinComb:
    """
    Block formula: a sum over joint compositions of both words of
    ``π(⊤p-block · ⊤q-block)`` slots. Valid when every slot is primitive.
    """
    result = LinComb()
    for p, cp in u.items():
        for q, cq in v.items():
            for blocks in _block_pairs(len(p), len(q)):
                slots, i, j = [], 0, 0
                for a, b in blocks:
                    left = _top_word(p[i : i + a])
                    right = _top_word(q[j : j + b])
                    slots.append(pi(forest_product(left, right)))
                    i, j = i + a, j + b
                result.iadd_coef(cp * cq, tensor_product(*slots))
    return result


# ---------------------------------------------------------------------------
# Dimensions of primitives
# ---------------------------------------------------------------------------


def forest_counts(n: int, d: int) -> list[int]:
    """Number of forests of weight 0..n over ``d`` labels (Euler transform)."""
    forests = [1] + [0] * n
    trees = [0] * (n + 1)
    for m in range(1, n + 1):
        trees[m] = d * forests[m - 1]
        total = 0
        for k in range(1, m + 1):
            weighted = sum(j * trees[j] for j in range(1, k + 1) if k % j == 0)
            total += weighted * forests[m - k]
        forests[m] = total // m
    return forests


def primitive_dimension(n: int, d: int = 1) -> int:
    """``dim P^{(n)}`` from ``Σ dim P^{(k)} x^k = 1 − 1/H_d(x)``."""
    if n < 1:
        return 0
    counts = forest_counts(n, d)
    inverse = [1] + [0] * n
    for m in range(1, n + 1):
        inverse[m] = -sum(counts[k] * inverse[m - k] for k in range(1, m + 1))
    return -inverse[n]


def primitive_dimension_polynomial(n: int, d: int) -> Fraction:
    """The closed-form polynomials in ``d`` for weights 1..5, as printed."""
    polys = {
        1: lambda x: Fraction(x),
        2: lambda x: Fraction(x * (x + 1), 2),
        3: lambda x: Fraction(x * (2 * x**2 + 1), 3),
        4: lambda x: Fraction(x * (9 * x**3 + 2 * x**2 + 3 * x + 2), 8),
        5: lambda x: Fraction(x * (64 * x**4 + 20 * x**3 - 5 * x**2 + 6), 30),
    }
    return polys[n](d)


def primitive_rank(n: int, alphabet: Iterable[str] = ("",)) -> int:
    """Rank of π on the weight-n forests, by exact elimination."""
    from .linalg import rank_of

    labels = tuple(sorted(set(alphabet)))
    images = [pi(LinComb.of(f)) for f in forests_of_weight(n, labels)]
    return rank_of(images)
