"""
Text grammar for forests, linear combinations and tensor words.

    sum     := ['+'|'-'] term (('+'|'-') term)*
    term    := [coeff] slot ('|' slot)*
    slot    := product (('⊤'|'^') product)*        left-composed growth
    product := atom+                                forest product
    atom    := tree | '•' | '1' | 'π(' sum ')' | 'pi(' sum ')' | '(' sum ')'
    tree    := '[' label? tree* ']'
    coeff   := integer | integer '/' integer

The empty word of the tensor algebra is written ``()``.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction

from common.constants import (
    MINUS_SIGNS,
    PI_PREFIXES,
    SLOT_SEPARATOR,
    TEXT_TOP,
    TOP_SYMBOLS,
    UNDECORATED,
    UNIT_TOKEN,
)
from common.exceptions import ExpressionParseError
from common.utils import CoefficientHelper, TermFormatter

from ..structures.forest import Forest, Tree, validate_labels
from ..structures.lincomb import LinComb, tensor_product
from . import hopf

logger = logging.getLogger(__name__)

_LABEL_STOP = set("[]()|^•⊤+-−,") | {" ", "\t", "\n"}


class ExpressionParser:
    """Recursive-descent parser evaluating expressions to exact elements."""

    def __init__(self, text: str, alphabet: Sequence[str] | None = None):
        self.text = text
        self.pos = 0
        self.alphabet = tuple(alphabet) if alphabet is not None else None
        self.is_tensor = False

    def parse(self) -> LinComb:
        terms = self._sum(top_level=True)
        self._skip()
        if self.pos != len(self.text):
            self._fail(f"Unexpected {self.text[self.pos]!r}")
        if self.is_tensor:
            result = LinComb()
            for coeff, slots in terms:
                result.iadd_coef(coeff, tensor_product(*slots))
            return result
        result = LinComb()
        for coeff, slots in terms:
            result.iadd_coef(coeff, slots[0])
        return result

    # -- helpers ---------------------------------------------------------

    def _fail(self, message: str):
        raise ExpressionParseError(message, self.pos, self.text)

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def _peek_any(self, tokens) -> str | None:
        for token in tokens:
            if self._peek(token):
                return token
        return None

    def _at_atom(self) -> bool:
        self._skip()
        if self.pos >= len(self.text):
            return False
        if self._peek_any(PI_PREFIXES) or self.text[self.pos] in "[(•":
            return self._peek("()") is False
        return self._at_unit()

    def _at_unit(self) -> bool:
        if not self._peek(UNIT_TOKEN):
            return False
        nxt = self.pos + len(UNIT_TOKEN)
        return nxt >= len(self.text) or not (self.text[nxt].isdigit() or self.text[nxt] == "/")

    # -- grammar ---------------------------------------------------------

    def _sum(self, top_level: bool = False) -> list[tuple[Fraction, list[LinComb]]]:
        terms = []
        self._skip()
        sign = 1
        if self._peek_any(MINUS_SIGNS):
            sign = -1
            self.pos += 1
        elif self._peek("+"):
            self.pos += 1
        while True:
            coeff, slots = self._term(top_level)
            terms.append((sign * coeff, slots))
            self._skip()
            if self._peek_any(MINUS_SIGNS):
                sign = -1
            elif self._peek("+"):
                sign = 1
            else:
                return terms
            self.pos += 1

    def _number(self) -> Fraction | None:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            return None
        if self._peek("/"):
            self.pos += 1
            digits = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == digits:
                self._fail("Expected a denominator")
        raw = self.text[start : self.pos]
        if raw.endswith("/0"):
            self._fail("Zero denominator")
        return CoefficientHelper.parse(raw)

    def _term(self, top_level: bool) -> tuple[Fraction, list[LinComb]]:
        self._skip()
        if self._peek("()"):
            self.pos += 2
            self._require_tensor(top_level)
            return Fraction(1), []
        coeff = Fraction(1)
        start = self.pos
        if not self._at_unit():
            number = self._number()
            if number is not None:
                coeff = number
                if not self._at_atom():
                    slots = [LinComb.of(Forest.unit())]
                    return coeff, self._more_slots(slots, top_level)
        elif self._starts_coefficient():
            coeff = self._number()
        if self.pos == start and not self._at_atom():
            self._fail("Expected a term")
        slots = [self._slot()]
        return coeff, self._more_slots(slots, top_level)

    def _starts_coefficient(self) -> bool:
        # "1 [..]" reads as a coefficient; a lone "1" is the unit atom
        saved = self.pos
        self.pos += len(UNIT_TOKEN)
        result = self._at_atom()
        self.pos = saved
        return result

    def _more_slots(self, slots: list[LinComb], top_level: bool) -> list[LinComb]:
        while True:
            self._skip()
            if not self._peek(SLOT_SEPARATOR):
                return slots
            self._require_tensor(top_level)
            self.pos += len(SLOT_SEPARATOR)
            slots.append(self._slot())

    def _require_tensor(self, top_level: bool) -> None:
        if not top_level:
            self._fail("Tensor slots are only allowed at the top level")
        self.is_tensor = True

    def _slot(self) -> LinComb:
        value = self._product()
        while True:
            self._skip()
            if not self._peek_any(TOP_SYMBOLS):
                return value
            self.pos += len(self._peek_any(TOP_SYMBOLS))
            value = hopf.natural_growth(value, self._product())

    def _product(self) -> LinComb:
        if not self._at_atom():
            self._fail("Expected a forest, π(...) or a parenthesised expression")
        value = self._atom()
        while self._at_atom():
            value = hopf.forest_product(value, self._atom())
        return value

    def _atom(self) -> LinComb:
        self._skip()
        prefix = self._peek_any(PI_PREFIXES)
        if prefix:
            self.pos += len(prefix)
            inner = self._inner_sum()
            return hopf.pi(inner)
        if self._peek("("):
            self.pos += 1
            return self._inner_sum()
        if self._peek("•"):
            self.pos += 1
            return LinComb.of(Tree(UNDECORATED).as_forest())
        if self._at_unit():
            self.pos += len(UNIT_TOKEN)
            return LinComb.of(Forest.unit())
        return LinComb.of(self._tree().as_forest())

    def _inner_sum(self) -> LinComb:
        terms = self._sum()
        self._skip()
        if not self._peek(")"):
            self._fail("Expected ')'")
        self.pos += 1
        result = LinComb()
        for coeff, slots in terms:
            result.iadd_coef(coeff, slots[0])
        return result

    def _tree(self) -> Tree:
        self._skip()
        if not self._peek("["):
            self._fail("Expected '['")
        self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _LABEL_STOP:
            self.pos += 1
        label = self.text[start : self.pos]
        if self.alphabet is not None:
            validate_labels({label}, self.alphabet)
        children = []
        while True:
            self._skip()
            if self._peek("]"):
                self.pos += 1
                return Tree(label, children)
            if not self._peek("["):
                self._fail("Expected '[' or ']'")
            children.append(self._tree())


def parse_expression(text: str, alphabet: Sequence[str] | None = None) -> LinComb:
    """Parse text to a LinComb of forests, or of words when ``|`` is used."""
    return ExpressionParser(text, alphabet).parse()


def parse_word(text: str, alphabet: Sequence[str] | None = None) -> LinComb:
    """Parse text as a tensor; a term without ``|`` is a one-letter word."""
    value = parse_expression(text, alphabet)
    if all(isinstance(key, tuple) for key in value):
        return value
    return value.linear_map(
        lambda key: LinComb.of(key if isinstance(key, tuple) else (key,))
    )


def parse_forest(text: str, alphabet: Sequence[str] | None = None) -> Forest:
    """Parse text that must denote a single basis forest."""
    value = parse_expression(text, alphabet)
    if len(value) != 1:
        raise ExpressionParseError("Expected a single forest", 0, text)
    ((key, coeff),) = value.items()
    if coeff != 1 or not isinstance(key, Forest):
        raise ExpressionParseError("Expected a single forest", 0, text)
    return key


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def key_text(key) -> str:
    if isinstance(key, Forest):
        return key.code
    if not key:
        return "()"
    return f" {SLOT_SEPARATOR} ".join(slot.code for slot in key)


def tree_latex(tree: Tree) -> str:
    root = tree.label or "\\bullet"
    if not tree.children:
        return root
    inner = " ".join(tree_latex(child) for child in tree.children)
    if tree.label:
        return f"[{inner}]_{{{tree.label}}}"
    return f"[{inner}]"


def key_latex(key) -> str:
    if isinstance(key, Forest):
        return " ".join(tree_latex(t) for t in key.trees) if key.trees else "1"
    if not key:
        return "()"
    return " \\otimes ".join(key_latex(slot) for slot in key)


def format_lincomb(x: LinComb, fmt: str = "text") -> str:
    """Render a LinComb in the ``text`` or ``latex`` form."""
    if fmt == "latex":
        return TermFormatter.join(
            [(c, key_latex(k)) for k, c in x.terms()], fmt="latex", unit="1"
        )
    return TermFormatter.join([(c, key_text(k)) for k, c in x.terms()])


def lincomb_json(x: LinComb) -> dict:
    """``{"terms": [{"coeff": "-1/2", "word": ["[] []"]}]}``"""
    terms = []
    for key, coeff in x.terms():
        word = [key.code] if isinstance(key, Forest) else [slot.code for slot in key]
        terms.append({"coeff": CoefficientHelper.text(coeff), "word": word})
    return {"terms": terms}


def render(x: LinComb, fmt: str = "text"):
    if fmt == "json":
        return lincomb_json(x)
    return format_lincomb(x, fmt)


def top_text(names: Sequence[str]) -> str:
    return f" {TEXT_TOP} ".join(names)


def parse_character(payload: dict, alphabet: Sequence[str] | None = None):
    """
    Build a Character from ``{"values": {forest: value}, "interval": [s, t]}``.

    Forest keys use the expression grammar and must name single forests.
    The bound is the largest weight present unless ``"bound"`` is given.
    """
    from ..structures.character import Character

    raw = payload.get("values", payload)
    values = {parse_forest(key, alphabet): float(value) for key, value in raw.items()}
    interval = tuple(payload.get("interval", (0.0, 0.0)))
    bound = payload.get("bound") or max((f.weight for f in values), default=1)
    return Character(values, interval, int(bound))
