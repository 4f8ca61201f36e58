"""Column-structured words: m symbol rows by N columns of field elements."""

from __future__ import annotations

from typing import Sequence

from .errors import LengthMismatch, ShapeMismatch


class SymbolMatrix:
    """Immutable m x N matrix of field elements (ints) used for codewords
    and received words of the column codes."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(c) for c in r) for r in rows)
        if not rows:
            raise LengthMismatch("need at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise LengthMismatch("ragged rows")
        self.rows = rows

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(r[i] for r in self.rows)

    def columns(self):
        for i in range(self.ncols):
            yield self.column(i)

    def replace_column(self, i: int, col: Sequence[int]) -> "SymbolMatrix":
        if len(col) != self.nrows:
            raise LengthMismatch("replacement column has wrong height")
        new_rows = [list(r) for r in self.rows]
        for j, v in enumerate(col):
            new_rows[j][i] = int(v)
        return SymbolMatrix(new_rows)

    def agreement(self, other: "SymbolMatrix") -> int:
        """Number of equal columns."""
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ShapeMismatch("words have different shapes")
        return sum(
            1 for i in range(self.ncols) if self.column(i) == other.column(i)
        )

    def __eq__(self, other):
        return isinstance(other, SymbolMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SymbolMatrix({[list(r) for r in self.rows]})"
