"""Exact linear algebra over the rationals.

Rank computations run fraction free on integer matrices (Bareiss
pivoting); kernel extraction runs reduced row echelon form over exact
rationals and normalizes the result to a canonical integer vector.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence


def clear_denominators(row: Sequence[Fraction]) -> list[int]:
    scale = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * scale) for x in row]


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    mat = [list(map(int, row)) for row in rows]
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    rank = 0
    prev_pivot = 1
    row = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(row, n_rows):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        pivot = mat[row][col]
        for r in range(row + 1, n_rows):
            for c in range(col + 1, n_cols):
                mat[r][c] = (pivot * mat[r][c] - mat[r][col] * mat[row][c]) // prev_pivot
            mat[r][col] = 0
        prev_pivot = pivot
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return integer_rank([clear_denominators(row) for row in rows])


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not mat:
        return mat, pivots
    n_rows, n_cols = len(mat), len(mat[0])
    row = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(row, n_rows):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = mat[row][col]
        mat[row] = [x / inv for x in mat[row]]
        for r in range(n_rows):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    return mat, pivots


def normalize_integer_vector(vec: Sequence[Fraction]) -> list[int]:
    """Clear denominators, remove content, make first nonzero entry positive."""
    ints = clear_denominators(list(vec))
    content = 0
    for x in ints:
        content = gcd(content, abs(x))
    if content > 1:
        ints = [x // content for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def first_nullspace_vector(rows: Sequence[Sequence[Fraction]]) -> Optional[list[int]]:
    """Canonical kernel vector, or None when the kernel is trivial.

    Deterministic choice: set the first free column of the reduced
    echelon form to 1, solve for the pivots, then normalize to a
    content-free integer vector with positive leading entry.
    """
    if not rows:
        return None
    n_cols = len(rows[0])
    reduced, pivots = rref(rows)
    free_cols = [c for c in range(n_cols) if c not in pivots]
    if not free_cols:
        return None
    free = free_cols[0]
    vec = [Fraction(0)] * n_cols
    vec[free] = Fraction(1)
    for r, p in enumerate(pivots):
        vec[p] = -reduced[r][free]
    return normalize_integer_vector(vec)
