from fractions import Fraction

import pandas as pd

from common.utils import CoefficientHelper, ReportHelper, TermFormatter


def test_coefficient_text_and_latex():
    assert CoefficientHelper.text(Fraction(-1, 2)) == "-1/2"
    assert CoefficientHelper.text(Fraction(4, 2)) == "2"
    assert CoefficientHelper.latex(Fraction(1, 3)) == "\\frac{1}{3}"


def test_coefficient_parse_accepts_unicode_minus():
    assert CoefficientHelper.parse("−3/4") == Fraction(-3, 4)


def test_join_signs_and_unit_coefficients():
    # Arrange
    terms = [(Fraction(1), "[] []"), (Fraction(-2), "[[]]"), (Fraction(1, 2), "1")]

    # Act
    line = TermFormatter.join(terms)

    # Assert
    assert line == "[] [] − 2 [[]] + 1/2"


def test_join_leading_negative_and_empty():
    assert TermFormatter.join([(Fraction(-1), "[]")]) == "−[]"
    assert TermFormatter.join([]) == "0"


def test_join_latex_uses_ascii_minus():
    assert TermFormatter.join([(Fraction(1), "a"), (Fraction(-1, 2), "b")], fmt="latex") == (
        "a - \\frac{1}{2} b"
    )


def test_frame_renders_json_records():
    # Arrange
    frame = pd.DataFrame([{"t": 1.0, "mean": 0.5}])

    # Act
    rendered = ReportHelper.frame(frame, "json")

    # Assert
    assert '"mean": 0.5' in rendered


def test_suite_line_counts():
    result = {"passed": False, "checks": 3, "errors": ["x"], "warnings": []}
    assert ReportHelper.suite_line("pi", result) == "FAIL pi: 3 checks, 1 errors"
