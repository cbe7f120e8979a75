"""Exact dense linear algebra over the rationals.

Scalars are `fractions.Fraction`; nothing in this module ever rounds.
The elimination core is fraction-free (Bareiss): rows are cleared to
integers and updated with the two-term minor formula, so intermediate
entries stay the size of minors of the input instead of accumulating
unreduced numerators.  Pivoting always takes the first nonzero entry in
column order, which makes ranks, kernels and solutions reproducible bit
for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Vector = tuple[Fraction, ...]


class RationalMatrix:
    """Immutable dense matrix with Fraction entries.

    `cols` must be passed explicitly for matrices with zero rows, since
    the shape cannot be recovered from an empty entry list.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Fraction | int]], cols: int | None = None):
        entries = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if entries:
            width = len(entries[0])
            if cols is not None and cols != width:
                raise ValueError("explicit cols does not match row width")
            cols = width
        elif cols is None:
            cols = 0
        for row in entries:
            if len(row) != cols:
                raise ValueError("non-rectangular matrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    def transpose(self) -> "RationalMatrix":
        cols = tuple(tuple(row[c] for row in self.entries) for c in range(self.cols))
        return RationalMatrix(cols, cols=self.rows)

    def matvec(self, vec: Sequence[Fraction | int]) -> Vector:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


def _integer_rows(entries: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; preserves row space."""
    out = []
    for row in entries:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("fraction-free elimination lost exact divisibility")
    return q


def _bareiss(rows: list[list[int]], width: int, pivot_limit: int) -> list[int]:
    """In-place fraction-free forward elimination.

    Pivots are sought in columns 0..pivot_limit-1, first nonzero entry in
    column order.  Returns the pivot columns; on exit the first
    len(piv_cols) rows are an integer echelon form and all later rows are
    zero in the pivoted columns.
    """
    piv_cols: list[int] = []
    nrows = len(rows)
    r = 0
    prev = 1
    for c in range(pivot_limit):
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        row_r = rows[r]
        for i in range(r + 1, nrows):
            row_i = rows[i]
            f = row_i[c]
            if f:
                for j in range(c + 1, width):
                    row_i[j] = _exact_div(piv * row_i[j] - f * row_r[j], prev)
                row_i[c] = 0
            else:
                for j in range(c + 1, width):
                    if row_i[j]:
                        row_i[j] = _exact_div(piv * row_i[j], prev)
        piv_cols.append(c)
        prev = piv
        r += 1
        if r == nrows:
            break
    return piv_cols


def _rref(rows: list[list[int]], piv_cols: list[int]) -> list[list[Fraction]]:
    """Reduced echelon form (pivot entries 1, zeros above) of the pivot rows."""
    rank = len(piv_cols)
    reduced = [[Fraction(v) for v in rows[i]] for i in range(rank)]
    for i in range(rank - 1, -1, -1):
        c = piv_cols[i]
        inv = reduced[i][c]
        reduced[i] = [v / inv for v in reduced[i]]
        for k in range(i):
            f = reduced[k][c]
            if f:
                reduced[k] = [a - f * b for a, b in zip(reduced[k], reduced[i])]
    return reduced


def rank_kernel(matrix: RationalMatrix) -> tuple[int, list[Vector]]:
    """Exact rank and null-space basis of a rational matrix.

    The kernel basis is the canonical one read off the reduced echelon
    form: one vector per free column in ascending order, with a 1 in the
    free position.  rank + len(kernel) == matrix.cols always holds.
    """
    rows = _integer_rows(matrix.entries)
    piv_cols = _bareiss(rows, matrix.cols, matrix.cols)
    reduced = _rref(rows, piv_cols)
    piv_set = set(piv_cols)
    kernel: list[Vector] = []
    for free in range(matrix.cols):
        if free in piv_set:
            continue
        vec = [Fraction(0)] * matrix.cols
        vec[free] = Fraction(1)
        for i, c in enumerate(piv_cols):
            vec[c] = -reduced[i][free]
        kernel.append(tuple(vec))
    return len(piv_cols), kernel


def solve_linear(matrix: RationalMatrix, rhs: Sequence[Fraction | int]) -> Vector | None:
    """Solve M x = rhs exactly, or return None when the system is inconsistent.

    The returned solution is the minimal-support echelon one: free
    variables are set to zero.
    """
    if len(rhs) != matrix.rows:
        raise ValueError("right-hand side length does not match row count")
    augmented = [tuple(row) + (Fraction(x),) for row, x in zip(matrix.entries, rhs)]
    rows = _integer_rows(augmented)
    piv_cols = _bareiss(rows, matrix.cols + 1, matrix.cols)
    rank = len(piv_cols)
    for i in range(rank, matrix.rows):
        if rows[i][matrix.cols]:
            return None
    reduced = _rref(rows, piv_cols)
    solution = [Fraction(0)] * matrix.cols
    for i, c in enumerate(piv_cols):
        solution[c] = reduced[i][matrix.cols]
    return tuple(solution)
