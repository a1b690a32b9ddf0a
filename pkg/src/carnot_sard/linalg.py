"""Exact dense linear algebra over a field.

Every routine only uses ``+ - * /`` and truthiness of the scalars, so the same
code runs over ``Fraction`` and over the number-field elements of
:mod:`carnot_sard.numberfield`. Matrices are sequences of row sequences.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

Matrix = Sequence[Sequence]


def zeros(m: int, n: int) -> list[list]:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        new = []
        for col in bt:
            acc = Fraction(0)
            for k, x in nz:
                y = col[k]
                if y:
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    nz = [(k, x) for k, x in enumerate(v) if x]
    out = []
    for row in a:
        acc = Fraction(0)
        for k, x in nz:
            y = row[k]
            if y:
                acc = acc + y * x
        out.append(acc)
    return out


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def rref(rows: Matrix, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form. Returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    prow = 0
    nrows = len(work)
    for col in range(ncols):
        if prow == nrows:
            break
        found = next((i for i in range(prow, nrows) if work[i][col]), None)
        if found is None:
            continue
        work[prow], work[found] = work[found], work[prow]
        piv = work[prow][col]
        work[prow] = [x / piv if x else x for x in work[prow]]
        pr = work[prow]
        for i in range(nrows):
            if i != prow:
                f = work[i][col]
                if f:
                    work[i] = [x - f * y if y else x for x, y in zip(work[i], pr)]
        pivots.append(col)
        prow += 1
    return work[:prow], pivots


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Matrix, ncols: int) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, p in zip(red, pivots):
            if r[free]:
                v[p] = -r[free]
        basis.append(v)
    return basis


def solve_in_span(basis: Matrix, v: Sequence) -> list | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is not in the span."""
    if not basis:
        return [] if is_zero_vector(v) else None
    # columns are the basis vectors, last column is v
    aug = [list(col) + [x] for col, x in zip(zip(*basis), v)]
    k = len(basis)
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for r, p in zip(red, pivots):
        coeffs[p] = r[k]
    return coeffs


def det(a: Matrix, exact_div: Callable = operator.truediv):
    """Bareiss fraction-free determinant over an integral domain."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in a]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return m[k][k] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * piv - m[i][k] * m[k][j], prev)
            m[i][k] = m[i][k] * 0
        prev = piv
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def integer_rank(a: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on the denominator-cleared matrix."""
    rows = []
    for r in a:
        den = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        rows.append([int(Fraction(x) * den) for x in r])
    if not rows:
        return 0
    ncols = len(rows[0])
    nrows = len(rows)
    rk = 0
    prev = 1
    for col in range(ncols):
        if rk == nrows:
            break
        found = next((i for i in range(rk, nrows) if rows[i][col]), None)
        if found is None:
            continue
        rows[rk], rows[found] = rows[found], rows[rk]
        piv = rows[rk][col]
        for i in range(rk + 1, nrows):
            f = rows[i][col]
            rows[i] = [(x * piv - f * y) // prev for x, y in zip(rows[i], rows[rk])]
        prev = piv
        rk += 1
    return rk
