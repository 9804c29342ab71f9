"""Exact sparse linear algebra over the rationals.

Rows are dicts mapping column index -> nonzero Fraction.  All routines are
deterministic: pivots are chosen by increasing column index, so results
depend only on the input order, never on hashing or timing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Row = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def row_scale(row: Row, c: Fraction) -> Row:
    if c == 0:
        return {}
    return {j: c * v for j, v in row.items()}


def row_addmul(acc: Row, row: Row, c: Fraction) -> None:
    """In-place acc += c * row, dropping cancellations."""
    if c == 0:
        return
    for j, v in row.items():
        w = acc.get(j, ZERO) + c * v
        if w:
            acc[j] = w
        else:
            acc.pop(j, None)


class RowReducer:
    """Incremental reduced row-echelon accumulator.

    Maintains a set of pivot rows in reduced form; `add` returns True when
    the row enlarged the span.  Pivot of each stored row is its smallest
    column index, normalized to 1, and eliminated from all other rows.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, Row] = {}

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        for j in sorted(row):
            if j not in row:
                continue
            piv = self.pivots.get(j)
            if piv is not None:
                row_addmul(row, piv, -row[j])
        return row

    def add(self, row: Row) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        j0 = min(row)
        row = row_scale(row, ONE / row[j0])
        for piv in self.pivots.values():
            if j0 in piv:
                row_addmul(piv, row, -piv[j0])
        self.pivots[j0] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)

    def basis(self) -> list[Row]:
        return [dict(self.pivots[j]) for j in sorted(self.pivots)]


def rank(rows: Iterable[Row]) -> int:
    red = RowReducer()
    for r in rows:
        red.add(r)
    return red.rank


def nullspace(rows: Iterable[Row], ncols: int) -> list[Row]:
    """Canonical basis of {x : A x = 0}.

    Unknown j of each basis vector is its coordinate at column j; the basis
    is in reduced column-echelon form with respect to the column order, one
    vector per free column (free coordinate set to 1).
    """
    red = RowReducer()
    for r in rows:
        red.add(r)
    pivots = red.pivots
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec: Row = {f: ONE}
        for j, piv in pivots.items():
            c = piv.get(f)
            if c:
                vec[j] = -c
        basis.append(vec)
    return basis


def solve_min_support(rows: list[Row], rhs: list[Fraction], ncols: int) -> Row | None:
    """One exact solution of A x = b, or None if inconsistent.

    Free unknowns are set to zero, so with columns ordered by preference the
    result is the deterministic minimal-support representative.
    """
    red = RowReducer()
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = -b
        red.add(row)
    if ncols in red.pivots:
        return None  # pivot in the augmented column: inconsistent
    sol: Row = {}
    for j, piv in red.pivots.items():
        # reduced row: x_j + sum_{k free} c_k x_k + c_aug = 0, free x_k := 0
        b = -piv.get(ncols, ZERO)
        if b:
            sol[j] = b
    return sol


def intersect_span(basis_a: list[Row], basis_b: list[Row], ncols: int) -> list[Row]:
    """Basis of span(A) ∩ span(B) via the kernel of the stacked system."""
    # unknowns: coefficients on A then on B; constraint A c - B d = 0
    rows_by_col: dict[int, Row] = {}
    na = len(basis_a)
    for i, v in enumerate(basis_a):
        for j, val in v.items():
            rows_by_col.setdefault(j, {})[i] = val
    for i, v in enumerate(basis_b):
        for j, val in v.items():
            rows_by_col.setdefault(j, {})[na + i] = -val
    ker = nullspace(list(rows_by_col.values()), na + len(basis_b))
    out = RowReducer()
    for k in ker:
        vec: Row = {}
        for i, c in k.items():
            if i < na:
                row_addmul(vec, basis_a[i], c)
        out.add(vec)
    return out.basis()
