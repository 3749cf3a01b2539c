import pytest

from algebra.services.expressions import parse_expression
from algebra.structures.forest import Forest, Tree


@pytest.fixture
def dot():
    return parse_expression("[]")


@pytest.fixture
def cherry_tree():
    """The two-vertex tree ``[[]]``"""
    return Tree("", [Tree()])


@pytest.fixture
def unit():
    return Forest.unit()


@pytest.fixture
def character_file(tmp_path):
    """Write a character payload to a JSON file and return its path"""
    import json

    def write(payload, name="character.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path

    return write
