"""
Common utilities for the application
"""

import json
from collections.abc import Iterable
from fractions import Fraction
from typing import Any

import pandas as pd

from .constants import TEXT_MINUS, UNIT_TOKEN


class CoefficientHelper:
    """Helper class for printing exact coefficients"""

    @staticmethod
    def text(value: Fraction) -> str:
        """``p/q`` or an integer"""
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def latex(value: Fraction) -> str:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"\\frac{{{value.numerator}}}{{{value.denominator}}}"

    @staticmethod
    def parse(raw: str) -> Fraction:
        return Fraction(raw.replace(TEXT_MINUS, "-"))


class TermFormatter:
    """Helper class for joining signed terms into one line"""

    @staticmethod
    def join(
        terms: Iterable[tuple[Fraction, str]], fmt: str = "text", unit: str = UNIT_TOKEN
    ) -> str:
        """
        Join ``(coefficient, body)`` pairs with sign separators.

        Args:
            terms: Non-zero coefficients with their printed basis element
            fmt: ``text`` or ``latex``
            unit: Body printed for the unit; it is dropped after a coefficient

        Returns:
            ``"0"`` for an empty sum
        """
        minus = TEXT_MINUS if fmt == "text" else "-"
        number = CoefficientHelper.text if fmt == "text" else CoefficientHelper.latex
        pieces: list[str] = []
        for i, (coeff, body) in enumerate(terms):
            magnitude = abs(Fraction(coeff))
            if body == unit:
                chunk = number(magnitude)
            elif magnitude == 1:
                chunk = body
            else:
                chunk = f"{number(magnitude)} {body}"
            if i == 0:
                pieces.append(f"{minus}{chunk}" if coeff < 0 else chunk)
            else:
                pieces.append(f" {minus} {chunk}" if coeff < 0 else f" + {chunk}")
        return "".join(pieces) if pieces else "0"


class ReportHelper:
    """Helper class for rendering command results"""

    @staticmethod
    def dumps(payload: Any) -> str:
        return json.dumps(payload, indent=2, ensure_ascii=False, default=str)

    @staticmethod
    def frame(frame: pd.DataFrame, fmt: str = "text") -> str:
        """Render a pandas table in the requested output format"""
        if fmt == "json":
            return ReportHelper.dumps(frame.to_dict(orient="records"))
        if fmt == "latex":
            return frame.to_latex(index=False, float_format="%.6g")
        return frame.to_string(index=False, float_format=lambda v: f"{v:.6g}")

    @staticmethod
    def suite_line(name: str, result: dict) -> str:
        status = "PASS" if result.get("passed") else "FAIL"
        line = f"{status} {name}: {result.get('checks', 0)} checks"
        if result.get("errors"):
            line += f", {len(result['errors'])} errors"
        if result.get("warnings"):
            line += f", {len(result['warnings'])} warnings"
        return line
