"""Exact linear algebra over the rationals (``fractions.Fraction``)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    matrix = [[Fraction(value) for value in row] for row in rows]
    width = len(matrix[0]) if matrix else 0
    if any(len(row) != width for row in matrix):
        raise ValueError("ragged matrix")
    return matrix


def row_echelon(rows: Sequence[Sequence[int | Fraction]]) -> tuple[Matrix, int, int]:
    """Forward elimination with row pivoting.

    Returns the echelon matrix, its rank and the sign of the row permutation used.
    """
    m = to_fraction_matrix(rows)
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    sign = 1
    pivot_row = 0
    for pivot_col in range(n_cols):
        for i_row in range(pivot_row, n_rows):
            if m[i_row][pivot_col] != 0:
                break
        else:
            continue
        if i_row != pivot_row:
            m[pivot_row], m[i_row] = m[i_row], m[pivot_row]
            sign = -sign
        pivot = m[pivot_row][pivot_col]
        for r in range(pivot_row + 1, n_rows):
            factor = m[r][pivot_col] / pivot
            if factor == 0:
                continue
            for c in range(pivot_col, n_cols):
                m[r][c] -= m[pivot_row][c] * factor
        pivot_row += 1
        if pivot_row == n_rows:
            break
    return m, pivot_row, sign


def matrix_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    if not rows:
        return 0
    return row_echelon(rows)[1]


def exact_determinant(rows: Sequence[Sequence[int | Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination; the empty matrix has determinant 1."""
    if not rows:
        return Fraction(1)
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("determinant needs a square matrix")
    echelon, rank, sign = row_echelon(rows)
    if rank < len(rows):
        return Fraction(0)
    result = Fraction(sign)
    for i, row in enumerate(echelon):
        result *= row[i]
    return result


def is_nonsingular(rows: Sequence[Sequence[int | Fraction]]) -> bool:
    return exact_determinant(rows) != 0
