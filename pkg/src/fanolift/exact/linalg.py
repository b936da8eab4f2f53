"""Exact linear algebra over the rationals and fraction-free determinants."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .poly import coerce

RatMatrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> RatMatrix:
    rows = [[coerce(c) for c in r] for r in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows have unequal lengths")
    return rows


def rref(rows: Sequence[Sequence]) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = as_matrix(rows)
    if not a:
        return [], []
    nr, nc = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Right kernel basis, one vector per free column, in reduced echelon form.

    Vector k has a 1 in the k-th free column and 0 in the other free
    columns, so the output is deterministic for equal inputs.
    """
    a = as_matrix(rows)
    nc = len(a[0]) if a else (ncols or 0)
    red, pivots = rref(a)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


def bareiss_det(rows: Sequence[Sequence], exact_div: Callable | None = None):
    """Fraction-free Gaussian elimination determinant over an integral domain.

    ``exact_div(a, b)`` must return a/b when b divides a; the default is
    integer floor division, correct because every Bareiss quotient is exact.
    """
    div = exact_div or (lambda a, b: a // b)
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return a[k][k] * 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = num if prev is None else div(num, prev)
            row_i[k] = akk * 0
        prev = akk
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_rational(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix via integer Bareiss after row scaling."""
    scale = Fraction(1)
    int_rows = []
    for r in rows:
        r = [Fraction(c) for c in r]
        d = 1
        for c in r:
            d = lcm(d, c.denominator)
        scale *= d
        int_rows.append([int(c * d) for c in r])
    return Fraction(bareiss_det(int_rows)) / scale
