from .forest import (
    Forest,
    Tree,
    b_plus,
    canonicalize,
    enumerate_forests,
    forests_of_weight,
    sigma,
    tree_factorial,
    trees_of_weight,
    weight,
)
from .character import Character
from .lincomb import LinComb, sort_key, tensor_product

__all__ = [
    "Character",
    "Forest",
    "LinComb",
    "Tree",
    "b_plus",
    "canonicalize",
    "enumerate_forests",
    "forests_of_weight",
    "sigma",
    "sort_key",
    "tensor_product",
    "tree_factorial",
    "trees_of_weight",
    "weight",
]
