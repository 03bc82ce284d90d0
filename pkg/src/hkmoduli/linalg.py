"""Dense exact linear algebra over a field (Fraction, GaussianRational).

Only what the rest of the package needs: determinant and rank by Gaussian
elimination on a copy of the matrix. Entries must support ``+ - * /`` and compare
equal to ``0`` when zero.
"""

from __future__ import annotations

from typing import Sequence


def _copy(rows: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in rows]


def determinant(rows: Sequence[Sequence]):
    a = _copy(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0 * det
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / p
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def rank(rows: Sequence[Sequence]) -> int:
    a = _copy(rows)
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][col]
        for i in range(n_rows):
            if i != r and a[i][col] != 0:
                factor = a[i][col] / p
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == n_rows:
            break
    return r
