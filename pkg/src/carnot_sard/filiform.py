"""Filiform Carnot groups of type I and II.

Basis X_1..X_{s+1} (0-based indices 0..s in code), g_1 = span{X_1, X_2},
g_j = span{X_{j+1}} for j >= 2. Type I: [X_1, X_j] = X_{j+1}, j = 2..s.
Type II (s odd, s >= 5): [X_1, X_j] = X_{j+1} for j = 2..s-1 and
[X_i, X_{s+2-i}] = (-1)^i X_{s+1} for i = 2..s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .endpoint import PiecewiseConstantControl, image_span
from .lie import StratifiedAlgebra, group_product
from .membership import MembershipResult
from .polynomial import PiecewisePolynomial, Poly, gcd_all, integrate_piecewise, rational_roots

FAMILIES = ("I", "II")


@dataclass(frozen=True)
class FiliformSpec:
    family: str
    step: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown filiform family {self.family!r} (expected 'I' or 'II')")
        s = self.step
        if self.family == "I" and s < 2:
            raise ValueError("type I filiform groups need step >= 2")
        if self.family == "II":
            if s == 3:
                raise ValueError("type II with step 3 is the Engel group; use family I with step 3")
            if s < 5 or s % 2 == 0:
                raise ValueError("type II filiform groups need an odd step >= 5")

    @property
    def name(self) -> str:
        return f"filiform-{self.family}"

    @property
    def dim(self) -> int:
        return self.step + 1

    @property
    def abnormal_dimension(self) -> int:
        return 1 if self.family == "I" else 3

    @property
    def abnormal_codimension(self) -> int:
        return self.dim - self.abnormal_dimension

    def abnormal_set_text(self) -> str:
        if self.family == "I":
            if self.step == 2:
                return "abnormal set: the identity only, codimension 3"
            return f"abnormal set: horizontal line exp(tX2), codimension {self.abnormal_codimension}"
        return ("abnormal set: 3-dimensional variety exp(aX2)exp(bX1)exp(cX2), "
                f"codimension {self.abnormal_codimension}")


def build_filiform(spec: FiliformSpec) -> StratifiedAlgebra:
    s = spec.step
    top = s  # index of X_{s+1}
    brackets: dict = {}
    last = s if spec.family == "I" else s - 1
    for j in range(2, last + 1):
        brackets[(0, j - 1)] = {j: 1}
    if spec.family == "II":
        for i in range(2, s + 1):
            k = s + 2 - i
            if i < k:
                brackets[(i - 1, k - 1)] = {top: (-1) ** i}
    return StratifiedAlgebra([2] + [1] * (s - 1), brackets, label=f"{spec.name} step {s}")


def _check_planar(u: PiecewiseConstantControl) -> None:
    if u.rank != 2:
        raise ValueError("filiform controls take values in a 2-dimensional first layer")


def classify_type1(u: PiecewiseConstantControl) -> bool:
    """Singular in type I iff u_1 vanishes on every segment."""
    _check_planar(u)
    return all(not v[0] for _, v in u.segments)


def classify_type2(u: PiecewiseConstantControl) -> tuple[bool, Fraction | None]:
    """Singularity test for type II: u_1 u_2 = 0 segmentwise, and int_0^t u_2 takes one value a
    on every segment where u_1 != 0. Returns (singular, a); a is None when u_1 vanishes identically."""
    _check_planar(u)
    level = Fraction(0)
    a = None
    for d, (u1, u2) in u.segments:
        if u1 and u2:
            return False, None
        if u1:
            if a is None:
                a = level
            elif a != level:
                return False, None
        level += d * u2
    return True, a


@dataclass(frozen=True)
class CovectorCertificate:
    """lam annihilates the image of the endpoint differential when A[0] and B are zero.

    ``A[i - 1]`` is A_i(t) = lam(Phi(t) X_{i+1}) and B(t) = lam(Phi(t) X_1) - lam_1,
    each as a piecewise polynomial on the control's segments.
    """

    lam: tuple[Fraction, ...]
    a: Fraction
    A: tuple[PiecewisePolynomial, ...]
    B: PiecewisePolynomial

    @property
    def vanishes(self) -> bool:
        return self.A[0].is_zero() and self.B.is_zero()


class CertificateError(AssertionError):
    pass


def covector_functions(u: PiecewiseConstantControl, s: int, lam: Sequence) -> tuple[tuple, PiecewisePolynomial]:
    """Forward integration of the type II recursion for a covector with lam_1 = lam_2 = 0.

    A_s = lam_{s+1}; A_{s-1}' = u_2 lam_{s+1}; A_i' = u_1 A_{i+1} for i <= s-2, with
    A_i(0) = lam_{i+1}; and B' = -u_2 A_2, B(0) = 0.
    """
    _check_planar(u)
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != s + 1:
        raise ValueError(f"covector must have {s + 1} entries")
    breaks = u.breaks
    u1 = [v[0] for _, v in u.segments]
    u2 = [v[1] for _, v in u.segments]
    m = len(u.segments)
    A: list[PiecewisePolynomial | None] = [None] * s
    A[s - 1] = PiecewisePolynomial(breaks, (Poly.const(lam[s]),) * m)
    A[s - 2] = integrate_piecewise(breaks, [Poly.const(c * lam[s]) for c in u2], lam[s - 1])
    for i in range(s - 3, -1, -1):  # A[i] is A_{i+1}
        A[i] = integrate_piecewise(breaks, [c * p for c, p in zip(u1, A[i + 1].pieces)], lam[i + 1])
    B = integrate_piecewise(breaks, [-c * p for c, p in zip(u2, A[1].pieces)], 0)
    return tuple(A), B


def certificate_covector(u: PiecewiseConstantControl, spec: FiliformSpec) -> CovectorCertificate:
    """lam = (0, ..., 0, -a, 1) for a singular type II control, checked two independent ways."""
    if spec.family != "II":
        raise ValueError("certificate covectors are defined for type II filiform groups")
    singular, a = classify_type2(u)
    if not singular:
        raise ValueError("control is not singular in type II: no certificate exists")
    a = Fraction(0) if a is None else a
    s = spec.step
    lam = (Fraction(0),) * (s - 1) + (-a, Fraction(1))
    A, B = covector_functions(u, s, lam)
    cert = CovectorCertificate(lam, a, A, B)
    if not cert.vanishes:
        raise CertificateError("A_1 or B_1 is not identically zero")
    img = image_span(u, build_filiform(spec))
    if any(sum(l * x for l, x in zip(lam, g)) for g in img.generators):
        raise CertificateError("covector does not annihilate the image span")
    return cert


def abnormal_membership_type1(g: Sequence) -> bool:
    """g lies on {exp(t X_2)} iff every coordinate but the X_2 one vanishes."""
    return all(not c for k, c in enumerate(g) if k != 1)


def _type2_step(g: Sequence) -> int:
    s = len(g) - 1
    FiliformSpec("II", s)
    return s


def type2_parametrization(s: int, b, sigma) -> tuple:
    """exp(a X_2) exp(b X_1) exp((sigma - a) X_2) with coordinates polynomial in a."""
    alg = build_filiform(FiliformSpec("II", s))
    a = Poly.x()
    zero = Poly()
    x = [zero] * (s + 1)
    y = [zero] * (s + 1)
    z = [zero] * (s + 1)
    x[1] = a
    y[0] = Poly.const(b)
    z[1] = Poly.const(sigma) - a
    return group_product(alg, x, y, z)


def abnormal_membership_type2(g: Sequence) -> MembershipResult:
    """Decide g in {exp(aX_2) exp(bX_1) exp(cX_2)} for type II of step len(g) - 1.

    Layer 1 is additive under the group law, so b = g_1 and c = g_2 - a; the
    remaining coordinates give polynomial equations in a whose common real
    zeros are the real roots of their gcd. When b != 0 the X_3 equation is
    linear in a, so every witness is rational.
    """
    s = _type2_step(g)
    g = tuple(Fraction(c) for c in g)
    b, sigma = g[0], g[1]
    p = type2_parametrization(s, b, sigma)
    eqs = [Poly() + p[k] - g[k] for k in range(2, s + 1)]
    h = gcd_all(eqs)
    alg = build_filiform(FiliformSpec("II", s))

    def verify(a):
        pt = group_product(alg, alg.horizontal((0, a)), alg.horizontal((b, 0)), alg.horizontal((0, sigma - a)))
        return all(x == y for x, y in zip(pt, g))

    if not h:
        assert verify(Fraction(0))
        return MembershipResult(True, True, (Fraction(0), b, sigma), "every a works")
    if h.degree == 0:
        return MembershipResult(False, True, None, "equations in a have no common root")
    # the X_3 coordinate is b (sigma - 2a) / 2, so a nonconstant gcd is linear
    assert h.degree == 1, "gcd of the type II equations must be linear"
    a = rational_roots(h)[0]
    if not verify(a):
        raise AssertionError("type II witness failed exact verification")
    return MembershipResult(True, True, (a, b, sigma - a), "rational witness")
