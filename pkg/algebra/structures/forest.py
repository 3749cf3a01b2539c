"""
Canonical decorated non-planar rooted trees and forests.

Trees and forests are immutable and interned: constructing the same
canonical shape twice returns the same object, so equality and hashing are
cheap. The canonical order of trees is recursive on
``(weight, label, child keys)``; children and the trees of a forest are
always stored sorted by it.
"""

import logging
import math
import threading
from collections import Counter
from collections.abc import Iterable, Sequence
from functools import lru_cache

from common.config import check_weight
from common.constants import MAX_BOUND, UNDECORATED
from common.exceptions import BoundExceededError, UnknownLabelError

logger = logging.getLogger(__name__)

_intern_lock = threading.Lock()
_trees: dict[tuple, "Tree"] = {}
_forests: dict[tuple, "Forest"] = {}


class Tree:
    """A rooted tree whose vertices carry labels from a finite alphabet."""

    __slots__ = ("label", "children", "weight", "key", "code", "_hash")

    label: str
    children: tuple["Tree", ...]
    weight: int
    key: tuple
    code: str

    def __new__(cls, label: str = UNDECORATED, children: Iterable["Tree"] = ()):
        kids = tuple(sorted(children, key=_tree_key))
        ident = (label, kids)
        tree = _trees.get(ident)
        if tree is not None:
            return tree
        tree = super().__new__(cls)
        object.__setattr__(tree, "label", label)
        object.__setattr__(tree, "children", kids)
        object.__setattr__(tree, "weight", 1 + sum(k.weight for k in kids))
        object.__setattr__(
            tree, "key", (tree.weight, label, tuple(k.key for k in kids))
        )
        object.__setattr__(
            tree, "code", "[" + label + "".join(k.code for k in kids) + "]"
        )
        object.__setattr__(tree, "_hash", hash(tree.key))
        with _intern_lock:
            return _trees.setdefault(ident, tree)

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def __reduce__(self):
        return (Tree, (self.label, self.children))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Tree) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Tree") -> bool:
        return self.key < other.key

    def __repr__(self):
        return f"Tree({self.code})"

    def __str__(self):
        return self.code

    @property
    def edges(self) -> int:
        return self.weight - 1

    @property
    def labels(self) -> set[str]:
        found = {self.label}
        for child in self.children:
            found |= child.labels
        return found

    def as_forest(self) -> "Forest":
        return Forest((self,))

    def children_forest(self) -> "Forest":
        return Forest(self.children)


class Forest:
    """A multiset of trees; the empty forest is the unit ``1``."""

    __slots__ = ("trees", "weight", "key", "code", "_hash")

    trees: tuple[Tree, ...]
    weight: int
    key: tuple
    code: str

    def __new__(cls, trees: Iterable[Tree] = ()):
        ordered = tuple(sorted(trees, key=_tree_key))
        forest = _forests.get(ordered)
        if forest is not None:
            return forest
        forest = super().__new__(cls)
        object.__setattr__(forest, "trees", ordered)
        object.__setattr__(forest, "weight", sum(t.weight for t in ordered))
        object.__setattr__(
            forest, "key", (forest.weight, tuple(t.key for t in ordered))
        )
        object.__setattr__(
            forest, "code", " ".join(t.code for t in ordered) if ordered else "1"
        )
        object.__setattr__(forest, "_hash", hash(forest.key))
        with _intern_lock:
            return _forests.setdefault(ordered, forest)

    def __setattr__(self, name, value):
        raise AttributeError("Forest is immutable")

    def __reduce__(self):
        return (Forest, (self.trees,))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Forest) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Forest") -> bool:
        return self.key < other.key

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __mul__(self, other: "Forest") -> "Forest":
        if not isinstance(other, Forest):
            return NotImplemented
        return Forest(self.trees + other.trees)

    def __repr__(self):
        return f"Forest({self.code})"

    def __str__(self):
        return self.code

    @classmethod
    def unit(cls) -> "Forest":
        return cls(())

    @property
    def is_unit(self) -> bool:
        return not self.trees

    @property
    def edges(self) -> int:
        return self.weight - len(self.trees)

    @property
    def labels(self) -> set[str]:
        found: set[str] = set()
        for tree in self.trees:
            found |= tree.labels
        return found

    def multiplicities(self) -> Counter:
        return Counter(self.trees)


def _tree_key(tree: Tree) -> tuple:
    return tree.key


def canonicalize(raw, alphabet: Sequence[str] | None = None) -> Tree:
    """
    Build the canonical tree for an unordered description.

    Args:
        raw: A Tree, or a nested ``(label, [children...])`` pair where the
            children are given in any order
        alphabet: Allowed labels; ``None`` accepts any label

    Returns:
        The interned canonical Tree
    """
    if isinstance(raw, Tree):
        tree = raw
    else:
        label, children = raw
        tree = Tree(label, (canonicalize(child, alphabet) for child in children))
    if alphabet is not None:
        validate_labels(tree.labels, alphabet)
    return tree


def validate_labels(labels: Iterable[str], alphabet: Sequence[str]) -> None:
    allowed = set(alphabet)
    for label in sorted(labels):
        if label not in allowed:
            raise UnknownLabelError(label or "•")


def weight(forest: Forest | Tree) -> int:
    return forest.weight


def b_plus(forest: Forest, label: str = UNDECORATED) -> Tree:
    """Graft every tree of ``forest`` onto a new root labelled ``label``."""
    return Tree(label, forest.trees)


@lru_cache(maxsize=None)
def _tree_sigma(tree: Tree) -> int:
    return sigma(tree.children_forest())


@lru_cache(maxsize=None)
def sigma(forest: Forest | Tree) -> int:
    """
    Size of the label-preserving automorphism group of a forest.

    Repeated identical trees contribute ``k!`` for their permutations, and
    each copy contributes its own automorphisms.
    """
    if isinstance(forest, Tree):
        return _tree_sigma(forest)
    total = 1
    for tree, count in forest.multiplicities().items():
        total *= math.factorial(count) * _tree_sigma(tree) ** count
    return total


@lru_cache(maxsize=None)
def tree_factorial(forest: Forest | Tree) -> int:
    """Product over vertices of the size of the subtree rooted there."""
    if isinstance(forest, Tree):
        return forest.weight * tree_factorial(forest.children_forest())
    return math.prod(tree_factorial(t) for t in forest.trees)


@lru_cache(maxsize=None)
def trees_of_weight(n: int, alphabet: tuple[str, ...] = (UNDECORATED,)) -> tuple:
    """All canonical trees with ``n`` vertices, in canonical order."""
    if n < 1:
        return ()
    found = {
        Tree(label, forest.trees)
        for label in alphabet
        for forest in forests_of_weight(n - 1, alphabet)
    }
    return tuple(sorted(found, key=_tree_key))


@lru_cache(maxsize=None)
def forests_of_weight(n: int, alphabet: tuple[str, ...] = (UNDECORATED,)) -> tuple:
    """All canonical forests with ``n`` vertices (``n = 0`` gives the unit)."""
    if n == 0:
        return (Forest.unit(),)
    found = set()
    for k in range(1, n + 1):
        for tree in trees_of_weight(k, alphabet):
            for rest in forests_of_weight(n - k, alphabet):
                found.add(Forest((tree, *rest.trees)))
    return tuple(sorted(found, key=lambda f: f.key))


def enumerate_forests(
    n: int, alphabet: Sequence[str] = (UNDECORATED,), include_unit: bool = False
) -> list[Forest]:
    """
    Every canonical forest of weight 1..n in deterministic order.

    Args:
        n: Largest weight; at most the enumeration cap
        alphabet: Vertex labels
        include_unit: Prepend the empty forest

    Returns:
        Forests sorted by weight, then canonically
    """
    if n > MAX_BOUND:
        raise BoundExceededError(n, MAX_BOUND)
    labels = tuple(sorted(set(alphabet)))
    result = [Forest.unit()] if include_unit else []
    for w in range(1, n + 1):
        result.extend(forests_of_weight(w, labels))
    logger.debug(f"Enumerated {len(result)} forests up to weight {n}")
    return result


def basis_up_to(n: int, alphabet: Sequence[str] = (UNDECORATED,)) -> list[Forest]:
    """Unit plus every forest up to weight ``n``, honouring the active bound."""
    check_weight(n)
    return enumerate_forests(n, alphabet, include_unit=True)


def rooted_tree_counts(n: int) -> list[int]:
    """
    Undecorated rooted tree counts for 1..n vertices, by the classical
    divisor-sum recursion (independent of the enumeration above).
    """
    counts = [0, 1]
    for m in range(1, n):
        total = 0
        for k in range(1, m + 1):
            divisor_sum = sum(d * counts[d] for d in range(1, k + 1) if k % d == 0)
            total += divisor_sum * counts[m - k + 1]
        counts.append(total // m)
    return counts[1 : n + 1]
