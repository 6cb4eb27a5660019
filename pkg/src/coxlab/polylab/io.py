"""Text formats: polynomials as ``c0,c1,...`` and matrices as CSV of ``p/q`` rationals."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from ..errors import ParseError
from ..intpoly import IntPoly
from .matrix import ExactMatrix


def parse_poly(text: str) -> IntPoly:
    try:
        return IntPoly.from_csv(text.strip())
    except (ValueError, ParseError) as exc:
        raise ParseError(f"bad polynomial {text!r}: {exc}") from None


def format_poly(p: IntPoly) -> str:
    return p.to_csv()


def parse_matrix(text: str) -> ExactMatrix:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            rows.append([Fraction(c.strip()) for c in row])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: bad matrix entry in {row}") from None
    if rows and len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths")
    return ExactMatrix.of(rows)


def format_matrix(M: ExactMatrix) -> str:
    return "\n".join(",".join(str(x) for x in r) for r in M.rows) + "\n"
