"""Baker-Campbell-Hausdorff coefficients in the Lyndon basis of the free Lie algebra on x, y.

The series log(exp(x) exp(y)) is expanded in the free associative algebra
(words over the letters 0 = x, 1 = y) up to the requested depth and then rewritten
in the Lyndon bracket basis: the lexicographically least word of a Lie
polynomial is Lyndon and carries that bracket's coefficient, so repeated
subtraction of bracket expansions is exact and terminates.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial

MAX_DEPTH = 12

Word = tuple[int, ...]


def is_lyndon(w: Word) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no proper factorization")


def _mul(a: dict, b: dict, depth: int) -> dict:
    out: dict = defaultdict(Fraction)
    for u, cu in a.items():
        for v, cv in b.items():
            if len(u) + len(v) <= depth:
                out[u + v] += cu * cv
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def bracket_expansion(w: Word) -> dict:
    """Associative expansion of the Lyndon bracket of w."""
    if len(w) == 1:
        return {w: Fraction(1)}
    u, v = standard_factorization(w)
    pu, pv = bracket_expansion(u), bracket_expansion(v)
    n = len(w)
    out: dict = defaultdict(Fraction)
    for a, ca in pu.items():
        for b, cb in pv.items():
            out[a + b] += ca * cb
            out[b + a] -= ca * cb
    return {k: c for k, c in out.items() if c and len(k) == n}


def associative_log(depth: int = MAX_DEPTH) -> dict:
    """log(exp(x) exp(y)) truncated at word length ``depth``."""
    w = {}
    for p in range(depth + 1):
        for q in range(depth + 1 - p):
            if p + q:
                w[(0,) * p + (1,) * q] = Fraction(1, factorial(p) * factorial(q))
    total: dict = defaultdict(Fraction)
    power = dict(w)
    for m in range(1, depth + 1):
        sign = Fraction((-1) ** (m + 1), m)
        for word, c in power.items():
            total[word] += sign * c
        power = _mul(power, w, depth)
    return {k: c for k, c in total.items() if c}


@lru_cache(maxsize=None)
def lyndon_coefficients(depth: int = MAX_DEPTH) -> tuple[tuple[Word, Fraction], ...]:
    """BCH series as ((lyndon word, coefficient), ...), ordered by length then word."""
    if depth > MAX_DEPTH:
        raise ValueError(f"BCH table is built up to depth {MAX_DEPTH}")
    remaining = dict(associative_log(depth))
    out = []
    while remaining:
        w = min(remaining, key=lambda k: (len(k), k))
        c = remaining[w]
        if not is_lyndon(w):
            raise AssertionError(f"non-Lie remainder at word {w}")
        out.append((w, c))
        for k, ck in bracket_expansion(w).items():
            nv = remaining.get(k, Fraction(0)) - c * ck
            if nv:
                remaining[k] = nv
            else:
                remaining.pop(k, None)
    return tuple(out)
