"""Horizontal curves of piecewise-constant controls and the rank of the endpoint differential.

Only piecewise-constant controls with rational data are handled. On such a
control the operator Phi(t), solution of Phi' = Phi o ad X_{u(t)} with
Phi(0) = Id, is an exact finite product of nilpotent exponentials, and
Phi(t) Y packages Y plus all the iterated simplex integrals of compositions of
ad X_{u(tau)} applied to Y. The image of the endpoint differential is the
right translate of span{Phi(t) Y : Y in g_1, t in [0, 1]}; on each segment
Phi(t) Y is a polynomial of degree < s in t, so that span is generated by
the Taylor vectors Phi(t_i) (ad X_{u_i})^p Y, p < s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import linalg
from .lie import StratifiedAlgebra, ad_operator, group_product
from .multivec import Subspace
from .polynomial import Poly


@dataclass(frozen=True)
class PiecewiseConstantControl:
    """Ordered (duration, value) segments covering [0, 1]."""

    segments: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def __init__(self, segments):
        segs = tuple((Fraction(d), tuple(Fraction(x) for x in v)) for d, v in segments)
        if not segs:
            raise ValueError("a control needs at least one segment")
        if any(d <= 0 for d, _ in segs):
            raise ValueError("segment durations must be positive")
        if sum(d for d, _ in segs) != 1:
            raise ValueError("segment durations must sum to 1")
        if len({len(v) for _, v in segs}) != 1:
            raise ValueError("all control values must have the same dimension")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def constant(cls, value: Sequence) -> "PiecewiseConstantControl":
        return cls([(1, value)])

    @classmethod
    def uniform(cls, values: Sequence[Sequence]) -> "PiecewiseConstantControl":
        m = len(values)
        return cls([(Fraction(1, m), v) for v in values])

    @property
    def rank(self) -> int:
        return len(self.segments[0][1])

    @property
    def breaks(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)]
        for d, _ in self.segments:
            out.append(out[-1] + d)
        return tuple(out)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Points of the primitive X(t) = int_0^t u at the segment breaks."""
        pts = [tuple(Fraction(0) for _ in range(self.rank))]
        for d, v in self.segments:
            pts.append(tuple(p + d * x for p, x in zip(pts[-1], v)))
        return pts

    def split(self, index: int, fraction) -> "PiecewiseConstantControl":
        """Cut segment ``index`` in two at the given fraction of its length."""
        fraction = Fraction(fraction)
        if not 0 < fraction < 1:
            raise ValueError("split fraction must lie in (0, 1)")
        d, v = self.segments[index]
        segs = list(self.segments)
        segs[index:index + 1] = [(d * fraction, v), (d * (1 - fraction), v)]
        return PiecewiseConstantControl(segs)

    def concatenate(self, other: "PiecewiseConstantControl") -> "PiecewiseConstantControl":
        """Run self then other, each at double speed on half of [0, 1]."""
        half = Fraction(1, 2)
        return PiecewiseConstantControl(
            [(d * half, tuple(2 * x for x in v)) for d, v in self.segments + other.segments])

    def restricted(self, t) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
        """Segments of the control on [0, t] (durations not renormalized)."""
        t = Fraction(t)
        out = []
        start = Fraction(0)
        for d, v in self.segments:
            if start >= t:
                break
            out.append((min(d, t - start), v))
            start += d
        return out


def _check(u: PiecewiseConstantControl, algebra: StratifiedAlgebra) -> None:
    if u.rank != algebra.rank:
        raise ValueError(f"control has {u.rank} components but the algebra has rank {algebra.rank}")


def nilpotent_exp(m: Sequence[Sequence], scale, terms: int) -> list[list]:
    """exp(scale * m) for nilpotent m with m^terms = 0."""
    n = len(m)
    out = linalg.identity(n)
    power = linalg.identity(n)
    scale = Fraction(scale)
    for p in range(1, terms):
        power = linalg.matmul(power, m)
        if not any(any(row) for row in power):
            break
        c = scale ** p / factorial(p)
        out = [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(out, power)]
    return out


@dataclass(frozen=True)
class FundamentalSolution:
    breaks: tuple[Fraction, ...]
    checkpoints: tuple  # Phi(t_i) as n x n matrices
    generators: tuple   # ad X_{u_i}
    step: int

    def at(self, t) -> list[list]:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        for i in range(len(self.generators)):
            if t <= self.breaks[i + 1]:
                tail = nilpotent_exp(self.generators[i], t - self.breaks[i], self.step)
                return linalg.matmul(self.checkpoints[i], tail)
        return [list(r) for r in self.checkpoints[-1]]

    def apply(self, t, y: Sequence) -> tuple:
        return tuple(linalg.matvec(self.at(t), y))


def fundamental_solution(u: PiecewiseConstantControl, algebra: StratifiedAlgebra) -> FundamentalSolution:
    _check(u, algebra)
    s = algebra.step
    phi = linalg.identity(algebra.dim)
    checkpoints = [phi]
    gens = []
    for d, v in u.segments:
        ad = ad_operator(algebra, algebra.horizontal(v))
        gens.append(ad)
        phi = linalg.matmul(phi, nilpotent_exp(ad, d, s))
        checkpoints.append(phi)
    return FundamentalSolution(u.breaks, tuple(checkpoints), tuple(gens), s)


def flow_endpoint(u: PiecewiseConstantControl, algebra: StratifiedAlgebra) -> tuple:
    """gamma_u(1) = exp(d_1 X_{u_1}) exp(d_2 X_{u_2}) ... in exponential coordinates."""
    _check(u, algebra)
    return group_product(algebra, *(tuple(d * c for c in algebra.horizontal(v)) for d, v in u.segments))


@dataclass(frozen=True)
class ImageSpan:
    span: Subspace
    generators: tuple
    annihilators: Subspace  # covectors vanishing on the span

    @property
    def is_full(self) -> bool:
        return self.span.dim == self.span.ambient_dim


def image_span(u: PiecewiseConstantControl, algebra: StratifiedAlgebra) -> ImageSpan:
    """Span of Phi(t) Y over Y in g_1 and t in [0, 1], before right translation."""
    fs = fundamental_solution(u, algebra)
    gens = []
    for i, ad in enumerate(fs.generators):
        phi = fs.checkpoints[i]
        for y in range(algebra.rank):
            vec = list(algebra.basis(y))
            for _ in range(algebra.step):
                gens.append(tuple(linalg.matvec(phi, vec)))
                vec = linalg.matvec(ad, vec)
                if not any(vec):
                    break
    span = Subspace(algebra.dim, gens)
    return ImageSpan(span, tuple(gens), span.orthogonal_complement())


@dataclass(frozen=True)
class Singularity:
    singular: bool
    witness: tuple | None
    image: ImageSpan

    def __bool__(self) -> bool:
        return self.singular


def is_singular(u: PiecewiseConstantControl, algebra: StratifiedAlgebra) -> Singularity:
    """Whether d_u F fails to be onto, with an annihilating covector when it does.

    The witness is the last reduced-echelon annihilator, scaled so that its
    last nonzero coordinate is 1; it vanishes on g_1.
    """
    img = image_span(u, algebra)
    if img.is_full:
        return Singularity(False, None, img)
    lam = img.annihilators.basis[-1]
    last = next(c for c in reversed(lam) if c)
    return Singularity(True, tuple(c / last for c in lam), img)


def iterated_integral_oracle(u: PiecewiseConstantControl, algebra: StratifiedAlgebra, j: int, t,
                             y: Sequence) -> tuple:
    """Direct evaluation of the j-fold simplex integral

        int_{0 <= tau_j <= ... <= tau_1 <= t} ad X_{u(tau_j)} ... ad X_{u(tau_1)} Y.

    Integrates from the outermost variable inwards: W_1(tau) = ad(tau) Y and
    W_k(tau) = ad(tau) int_tau^t W_{k-1}, each a piecewise polynomial vector;
    the answer is int_0^t W_j. Independent of :func:`fundamental_solution`.
    """
    _check(u, algebra)
    if j < 1:
        raise ValueError("j must be at least 1")
    n = algebra.dim
    segs = [(d, ad_operator(algebra, algebra.horizontal(v))) for d, v in u.restricted(t)]
    if not segs:
        return (Fraction(0),) * n

    def apply(m, pv):
        return [sum((m[a][b] * pv[b] for b in range(n) if m[a][b] and pv[b]), Poly()) for a in range(n)]

    w = [[Poly.const(c) for c in linalg.matvec(ad, y)] for _, ad in segs]
    for _ in range(j - 1):
        prims = [[p.antiderivative() for p in wi] for wi in w]
        full = [[p(d) for p in prim] for prim, (d, _) in zip(prims, segs)]
        tail = [Fraction(0)] * n
        nxt = [None] * len(segs)
        for i in range(len(segs) - 1, -1, -1):
            tail = [a + b for a, b in zip(tail, full[i])]
            g = [Poly.const(c) - p for c, p in zip(tail, prims[i])]
            nxt[i] = apply(segs[i][1], g)
        w = nxt
    out = [Fraction(0)] * n
    for wi, (d, _) in zip(w, segs):
        for k, p in enumerate(wi):
            out[k] += p.antiderivative()(d)
    return tuple(out)
