"""Arithmetic in Q(alpha) = Q[x]/(h) for an irreducible h.

Used to decide rank and membership questions exactly at irrational points of a
pencil: an identity between rank conditions that holds at one root of h holds
at every root of h, so one symbolic root stands for all its real conjugates.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomial import Poly, real_root_intervals


class NumberField:
    def __init__(self, modulus: Poly):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus.monic()

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, Poly):
            return FieldElement(self, value % self.modulus)
        return FieldElement(self, Poly.const(value))

    @property
    def generator(self) -> "FieldElement":
        return self(Poly.x())

    def real_roots(self) -> list[tuple[Fraction, Fraction]]:
        return real_root_intervals(self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(self.modulus)


class FieldElement:
    __slots__ = ("field", "poly")

    def __init__(self, field: NumberField, poly: Poly):
        self.field = field
        self.poly = poly

    def _lift(self, other) -> Poly:
        if isinstance(other, FieldElement):
            return other.poly
        return Poly.const(other)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other) -> bool:
        return self.poly == self._lift(other)

    def __hash__(self) -> int:
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"FieldElement({self.poly!r} mod {self.field.modulus!r})"

    def __neg__(self):
        return FieldElement(self.field, -self.poly)

    def __add__(self, other):
        return FieldElement(self.field, self.poly + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.poly - self._lift(other))

    def __rsub__(self, other):
        return FieldElement(self.field, self._lift(other) - self.poly)

    def __mul__(self, other):
        return FieldElement(self.field, (self.poly * self._lift(other)) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.poly:
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid: s*poly + t*modulus = 1
        r0, r1 = self.field.modulus, self.poly
        s0, s1 = Poly(), Poly.const(1)
        while r1:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise ArithmeticError("modulus is not irreducible")
        return FieldElement(self.field, (s0 * (1 / r0.c[0])) % self.field.modulus)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other
