"""Exact matrix-group oracle on strictly upper-triangular n x n matrices.

Basis E_ij ordered by superdiagonal, then row, matching catalog.upper_triangular.
exp and log are finite sums because the matrices are nilpotent.
"""

from __future__ import annotations

from fractions import Fraction


def _entries(n):
    return [(i, i + k) for k in range(1, n) for i in range(n - k)]


def to_matrix(n, coords):
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in zip(_entries(n), coords):
        m[i][j] = Fraction(c)
    return m


def from_matrix(n, m):
    return tuple(m[i][j] for i, j in _entries(n))


def mm(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def madd(a, b, c=1):
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mexp(a):
    n = len(a)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    term = out
    for k in range(1, n):
        term = [[x / k for x in row] for row in mm(term, a)]
        out = madd(out, term)
    return out


def mlog(g):
    n = len(g)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    x = madd(g, eye, -1)
    out = [[Fraction(0)] * n for _ in range(n)]
    power = eye
    for k in range(1, n):
        power = mm(power, x)
        out = madd(out, power, Fraction((-1) ** (k + 1), k))
    return out




def minv(g):
    """Inverse of a unipotent matrix: exp(-log g)."""
    return mexp([[-x for x in row] for row in mlog(g)])
