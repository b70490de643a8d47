"""Exact linear algebra for the bracket-vanishing systems.

Bareiss fraction-free elimination keeps every intermediate entry a minor
of the input, so integer matrices stay integer until the final
back-substitution. The right-hand side may hold affine forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by fraction-free elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence):
    """Solve A x = b exactly; entries of ``b`` may be numbers or affine forms.

    Raises ZeroDivisionError when A is singular.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [rhs[i]] for i, row in enumerate(matrix)]
    prev = Fraction(1)
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                raise ZeroDivisionError("singular system")
            a[k], a[swap] = a[swap], a[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * a[k][k] - a[k][j] * a[i][k]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    x = [None] * n
    for i in reversed(range(n)):
        acc = a[i][n]
        for j in range(i + 1, n):
            acc = acc - x[j] * a[i][j]
        x[i] = acc / a[i][i]
    return x

