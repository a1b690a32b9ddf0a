"""Univariate polynomials over Q and piecewise polynomials on a partition of [0, 1].

Real-root counting, isolation and factorization over Q are delegated to sympy;
everything else (arithmetic, gcd, integration) is done here on Fraction
coefficient tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class Poly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x) -> "Poly":
        return cls((x,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"Poly({[str(x) for x in self.c]})"

    def __neg__(self) -> "Poly":
        return Poly(-x for x in self.c)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Fraction(other)
            if not other:
                return Poly()
            return Poly(x * other for x in self.c)
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    if y:
                        out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(other.c) + 1
        if dq <= 0:
            return Poly(), self
        quo = [Fraction(0)] * dq
        lead = other.c[-1]
        for k in range(dq - 1, -1, -1):
            coef = rem[k + len(other.c) - 1] / lead
            quo[k] = coef
            if coef:
                for j, y in enumerate(other.c):
                    rem[k + j] -= coef * y
        return Poly(quo), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __truediv__(self, other) -> "Poly":
        """Exact division; raises if there is a remainder."""
        if not isinstance(other, Poly):
            return self * (1 / Fraction(other))
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = x * 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def monic(self) -> "Poly":
        return self * (1 / self.lc()) if self.c else self

    def derivative(self) -> "Poly":
        return Poly(i * x for i, x in enumerate(self.c) if i)

    def antiderivative(self) -> "Poly":
        """Primitive vanishing at 0."""
        return Poly([0] + [x / (i + 1) for i, x in enumerate(self.c)])

    def shift(self, h) -> "Poly":
        """p(x + h)."""
        return self(Poly((h, 1))) if self.c else Poly()

    def to_sympy(self, symbol):
        import sympy

        return sympy.Poly(list(reversed([sympy.Rational(x.numerator, x.denominator) for x in self.c])) or [0],
                          symbol, domain="QQ")

    @classmethod
    def from_sympy(cls, p) -> "Poly":
        return cls(Fraction(int(x.p), int(x.q)) for x in reversed(p.all_coeffs()))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def gcd_all(polys: Iterable[Poly]) -> Poly:
    """Monic gcd; the zero polynomial if every input is zero."""
    return reduce(poly_gcd, polys, Poly())


def _symbol():
    import sympy

    return sympy.Symbol("t")


def count_real_roots(p: Poly) -> int:
    """Number of distinct real roots (exact, Sturm-based). Zero polynomial -> -1."""
    if not p:
        return -1
    if p.degree == 0:
        return 0
    return int(p.to_sympy(_symbol()).sqf_part().count_roots())


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, sorted."""
    if p.degree <= 0:
        return []
    return sorted({-f.c[0] / f.c[1] for f, _ in factor_rational(p) if f.degree == 1})


def factor_rational(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities."""
    import sympy

    if p.degree <= 0:
        return []
    _, factors = sympy.factor_list(p.to_sympy(_symbol()).as_expr(), _symbol(), domain="QQ")
    out = []
    for f, mult in factors:
        out.append((Poly.from_sympy(sympy.Poly(f, _symbol(), domain="QQ")).monic(), int(mult)))
    return out


def real_root_intervals(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational isolating intervals of the distinct real roots of p."""
    if p.degree <= 0:
        return []
    out = []
    for (lo, hi), _ in p.to_sympy(_symbol()).sqf_part().intervals():
        out.append((Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))))
    return out


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Function on [0, 1] that is polynomial on each cell of a partition.

    ``pieces[i]`` is expressed in the local variable ``sigma = t - breaks[i]``.
    """

    breaks: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        idx = len(self.pieces) - 1
        for i in range(len(self.pieces)):
            if t <= self.breaks[i + 1]:
                idx = i
                break
        return self.pieces[idx](t - self.breaks[idx])

    def is_zero(self) -> bool:
        return not any(self.pieces)

    def coefficient_lists(self) -> list[list[Fraction]]:
        return [list(p.c) for p in self.pieces]


def integrate_piecewise(breaks: Sequence[Fraction], rates: Sequence[Poly], start=0) -> PiecewisePolynomial:
    """F(0) = start, F' = rates[i] on cell i; F continuous."""
    pieces = []
    value = Fraction(start)
    for i, rate in enumerate(rates):
        prim = rate.antiderivative() + value
        pieces.append(prim)
        value = prim(breaks[i + 1] - breaks[i])
    return PiecewisePolynomial(tuple(breaks), tuple(pieces))
