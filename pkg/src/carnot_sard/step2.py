"""Step-2 Carnot groups presented as V + (exterior square of V) / W.

With the declared basis e_1..e_r of V orthonormal and the pair basis e_i ^ e_j
(i < j, lexicographic) of the exterior square orthonormal, W^{perp2} is a plain
orthogonal complement. Writing eta_1..eta_d for the reduced-echelon basis of
W^{perp2}, the quotient map is pi(omega) = (<omega, eta_a>)_a, so the second
layer has basis T_1..T_d and [e_i, e_j] = sum_a eta_a[(i, j)] T_a.

A point of Abn_G is any pi(x_1 + x_2) with x_1 in ker A(omega) and x_2 in the
exterior square of ker A(omega), for some nonzero omega in W^{perp2}; here
A(omega) is the skew matrix of omega and ker A(omega) = spt(omega)^{perp1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .endpoint import PiecewiseConstantControl
from .lie import StratifiedAlgebra, bracket
from .membership import MembershipResult, RealRoot
from .multivec import (Subspace, TwoVector, exterior_dim, pairs, perp1, perp2, rank, support,
                       wedge_coords, lambda2)
from .numberfield import NumberField
from .polynomial import Poly, count_real_roots, factor_rational, gcd_all, poly_gcd, rational_roots, \
    real_root_intervals
from .rational import derived_rng, random_rational


# ---------------------------------------------------------------- quotient

@dataclass(frozen=True, eq=False)
class Step2Quotient:
    r: int
    W: Subspace
    Wperp2: Subspace
    algebra: StratifiedAlgebra
    label: str = ""
    source_map: tuple | None = None  # M with [X_i, X_j]_source = M [X_i, X_j]_quotient on layer 2

    @property
    def n(self) -> int:
        return self.W.dim

    @property
    def d(self) -> int:
        return self.Wperp2.dim

    @property
    def dim(self) -> int:
        return self.r + self.d

    @property
    def eta(self) -> tuple[tuple, ...]:
        return self.Wperp2.basis

    def eta_two_vectors(self) -> list[TwoVector]:
        return [TwoVector.from_coords(e, self.r) for e in self.eta]

    def project(self, coords: Sequence) -> tuple:
        """pi on pair coordinates (any field)."""
        return tuple(sum((e[p] * c for p, c in enumerate(coords) if e[p] and c), Fraction(0)) for e in self.eta)

    def combine(self, coeffs: Sequence) -> tuple:
        """sum_a coeffs[a] eta_a as pair coordinates (any field)."""
        out = [Fraction(0)] * exterior_dim(self.r)
        for c, e in zip(coeffs, self.eta):
            if c:
                out = [x + c * y for x, y in zip(out, e)]
        return tuple(out)


def _coords_of(gen, r: int) -> tuple:
    if isinstance(gen, TwoVector):
        if gen.dim != r:
            raise ValueError(f"2-vector on R^{gen.dim} given for rank {r}")
        return gen.coords()
    coords = tuple(Fraction(x) for x in gen)
    if len(coords) != exterior_dim(r):
        raise ValueError(f"pair coordinates must have length {exterior_dim(r)} for rank {r}")
    return coords


def _induced_algebra(r: int, eta: Sequence[Sequence], label: str) -> StratifiedAlgebra:
    d = len(eta)
    brackets = {}
    for p, (i, j) in enumerate(pairs(r)):
        vec = {r + a: e[p] for a, e in enumerate(eta) if e[p]}
        if vec:
            brackets[(i, j)] = vec
    names = [f"X{i + 1}" for i in range(r)] + [f"T{a + 1}" for a in range(d)]
    return StratifiedAlgebra([r, d] if d else [r], brackets, names=names, label=label)


def build_quotient(r: int, W_generators: Iterable, label: str = "") -> Step2Quotient:
    """Quotient of the free step-2 algebra on r generators by span(W_generators)."""
    if r < 2:
        raise ValueError("rank must be at least 2")
    W = Subspace(exterior_dim(r), [_coords_of(g, r) for g in W_generators])
    wp = perp2(W)
    return Step2Quotient(r, W, wp, _induced_algebra(r, wp.basis, label), label)


def quotient_from_perp(r: int, perp_generators: Iterable, label: str = "") -> Step2Quotient:
    """Quotient whose W^{perp2} is spanned by the given 2-vectors."""
    span = Subspace(exterior_dim(r), [_coords_of(g, r) for g in perp_generators])
    return build_quotient(r, perp2(span).basis, label)


def from_structure_constants(algebra: StratifiedAlgebra) -> Step2Quotient:
    """Inverse presentation: W is the kernel of the bracket map onto g_2.

    The returned quotient carries ``source_map`` M, the layer-2 basis change
    with T_b(source) coordinates = M times T_a(quotient) coordinates.
    """
    if algebra.step != 2:
        raise ValueError(f"expected a step-2 algebra, got step {algebra.step}")
    r = algebra.rank
    layer2 = list(algebra.layer_indices(2))
    table = algebra.structure_constants()
    zero = (Fraction(0),) * algebra.dim
    B = [[table.get(p, zero)[k] for p in pairs(r)] for k in layer2]
    W = linalg.nullspace(B, exterior_dim(r))
    q = build_quotient(r, W, algebra.label)
    M = []
    for row in B:
        coeffs = linalg.solve_in_span(q.eta, row)
        if coeffs is None:
            raise ValueError("bracket map is inconsistent with its own kernel")
        M.append(tuple(coeffs))
    if len(q.eta) != len(layer2):
        raise ValueError("second layer is not generated by brackets of the first")
    return replace(q, source_map=tuple(M))


def skew_matrix(coords: Sequence, r: int) -> list[list]:
    """Skew matrix of a 2-vector over any field."""
    zero = Fraction(0)
    a = [[zero] * r for _ in range(r)]
    for (i, j), c in zip(pairs(r), coords):
        if c:
            a[i][j] = c
            a[j][i] = -c
    return a


# ---------------------------------------------------------------- pencils

def _pencil(c1: Sequence, c2: Sequence, r: int) -> list[list[Poly]]:
    """Skew matrix of t * omega_1 + omega_2 with entries in Q[t]."""
    m1, m2 = skew_matrix(c1, r), skew_matrix(c2, r)
    return [[Poly((y, x)) for x, y in zip(r1, r2)] for r1, r2 in zip(m1, m2)]


def _poly_det(mat: Sequence[Sequence[Poly]]) -> Poly:
    if not mat:
        return Poly.const(1)
    return Poly() + linalg.det(mat)


def _principal_minors(mat, order: int):
    for idx in itertools.combinations(range(len(mat)), order):
        yield idx, _poly_det([[mat[i][j] for j in idx] for i in idx])


def _gcd_until_constant(polys: Iterable[Poly]) -> Poly:
    """Monic gcd, stopping early once it is a nonzero constant."""
    g = Poly()
    for p in polys:
        g = poly_gcd(g, p)
        if g and g.degree == 0:
            break
    return g


def _generic_rank(c1: Sequence, c2: Sequence, r: int) -> int:
    """Matrix rank of t omega_1 + omega_2 for all but finitely many t.

    Its minors have degree <= r in t, so r + 1 sample points suffice.
    """
    return max(linalg.rank(skew_matrix([t * x + y for x, y in zip(c1, c2)], r)) for t in range(r + 1))


def pencil_determinant(q: Step2Quotient, omega1: Sequence | None = None,
                       omega2: Sequence | None = None) -> tuple[Fraction, ...]:
    """Coefficients of the binary form det(A(t omega_1 + s omega_2)), ordered t^r, t^(r-1) s, ..., s^r.

    Defaults to the reduced basis eta_1, eta_2 of a two-dimensional W^{perp2}.
    """
    if omega1 is None or omega2 is None:
        if q.d != 2:
            raise ValueError("the default pencil needs dim W^perp2 = 2")
        omega1, omega2 = q.eta
    c1, c2 = _coords_of(omega1, q.r), _coords_of(omega2, q.r)
    p = _poly_det(_pencil(c1, c2, q.r))
    coeffs = list(p.c) + [Fraction(0)] * (q.r + 1 - len(p.c))
    return tuple(reversed(coeffs))


@dataclass(frozen=True)
class PencilPoint:
    """omega = t omega_1 + omega_2 on a pencil, or omega_1 itself when ``t`` is None."""

    t: Fraction | RealRoot | None

    def describe(self) -> str:
        if self.t is None:
            return "first generator (point at infinity)"
        if isinstance(self.t, RealRoot):
            return f"t omega_1 + omega_2 with t the {self.t.describe()}"
        return f"{self.t} omega_1 + omega_2"


def _field_point(t: RealRoot):
    field_ = NumberField(t.poly)
    return field_, field_.generator


# ---------------------------------------------------------------- k tilde

@dataclass(frozen=True)
class SearchBudget:
    samples: int = 200
    height: int = 10
    seed: int = 0
    grid_height: int = 1


@dataclass(frozen=True)
class RankProfile:
    """Minimal rank of nonzero elements of W^{perp2}.

    When ``certified``, ``ktilde`` is exact; otherwise lower <= k~ <= ktilde.
    ``witness`` is a rational 2-vector of rank ``ktilde`` when one was found,
    and ``point`` locates the witness on the pencil when dim W^{perp2} = 2.
    """

    ktilde: int
    lower: int
    certified: bool
    witness: TwoVector | None
    point: PencilPoint | None = None
    method: str = ""


def _pencil_min_rank(c1: Sequence, c2: Sequence, r: int) -> tuple[int, PencilPoint, tuple | None]:
    """Least k such that some real point of the projective pencil has rank k.

    Rank <= k at a point iff every principal minor of order 2k + 2 vanishes
    there (skew matrices attain their rank on a principal submatrix); on the
    affine chart these minors are polynomials in t and their common real
    zeros are the real roots of their gcd.
    """
    mat = _pencil(c1, c2, r)
    rank1 = linalg.rank(skew_matrix(c1, r)) // 2
    for k in range(1, r // 2 + 1):
        if rank1 <= k:
            return k, PencilPoint(None), tuple(c1)
        order = 2 * k + 2
        if order > r:
            return k, PencilPoint(Fraction(0)), tuple(c2)
        g = _gcd_until_constant(m for _, m in _principal_minors(mat, order))
        if not g:
            return k, PencilPoint(Fraction(0)), tuple(c2)
        if g.degree == 0:
            continue
        roots = rational_roots(g)
        if roots:
            t = roots[0]
            return k, PencilPoint(t), tuple(t * x + y for x, y in zip(c1, c2))
        for f, _ in factor_rational(g):
            if count_real_roots(f) > 0:
                return k, PencilPoint(RealRoot(f, real_root_intervals(f)[0])), None
    raise AssertionError("unreachable: rank never exceeds r/2")


def _search_min_rank(q: Step2Quotient, budget: SearchBudget) -> tuple[int, tuple]:
    d = q.d
    candidates = [tuple(Fraction(int(a == b)) for a in range(d)) for b in range(d)]
    h = budget.grid_height
    for c in itertools.product(range(-h, h + 1), repeat=d):
        first = next((x for x in c if x), 0)
        if first > 0:  # one representative per projective class up to sign
            candidates.append(tuple(Fraction(x) for x in c))
    for i in range(budget.samples):
        rng = derived_rng(budget.seed, i)
        c = tuple(random_rational(rng, budget.height) for _ in range(d))
        if any(c):
            candidates.append(c)
    best = None
    for c in candidates:
        coords = q.combine(c)
        k = linalg.rank(skew_matrix(coords, q.r)) // 2
        if best is None or k < best[0]:
            best = (k, coords)
            if k == 1:
                break
    return best


def min_rank_ktilde(q: Step2Quotient, budget: SearchBudget | None = None) -> RankProfile:
    d = q.d
    if d == 0:
        raise ValueError("W^perp2 is zero: the quotient has no second layer")
    r = q.r
    if d == 1:
        omega = TwoVector.from_coords(q.eta[0], r)
        return RankProfile(rank(omega), rank(omega), True, omega, None, "single generator")
    if d == 2:
        k, point, coords = _pencil_min_rank(q.eta[0], q.eta[1], r)
        witness = TwoVector.from_coords(coords, r) if coords is not None else None
        return RankProfile(k, k, True, witness, point, "pencil minors")
    k, coords = _search_min_rank(q, budget or SearchBudget())
    return RankProfile(k, 1, k == 1, TwoVector.from_coords(coords, r), None, "bounded search")


def codimension_bound(q: Step2Quotient, profile: RankProfile | None = None) -> int:
    """2 k~ + 1, using the certified lower bound on k~ when k~ is not exact."""
    profile = profile or min_rank_ktilde(q)
    k = profile.ktilde if profile.certified else profile.lower
    return 2 * k + 1


# ---------------------------------------------------------------- dimension bookkeeping

@dataclass(frozen=True)
class DimensionReport:
    r: int
    n: int
    k: int
    m: int
    dim_B: int
    stratum: int
    total: int
    dim_G: int


def ekw_bounds(r: int, n: int, k: int, m: int) -> DimensionReport:
    """Dimension counts for the rank-k stratum with dim(W cap Lambda^2 spt(omega)^perp1) = m."""
    if r < 2 or not 0 <= n <= exterior_dim(r):
        raise ValueError(f"invalid group data r={r}, n={n}")
    if not 1 <= 2 * k <= r:
        raise ValueError(f"k={k} out of range for r={r}")
    if not 0 <= m <= min(n, exterior_dim(r - 2 * k)):
        raise ValueError(f"m={m} out of range for n={n}, r-2k={r - 2 * k}")
    # W projects into the complement of Lambda^2 ker A(omega) inside omega^perp
    if n - m > exterior_dim(r) - exterior_dim(r - 2 * k) - 1:
        raise ValueError(f"n={n}, m={m} leave no room for omega of rank {k}")
    dim_g = r * (r + 1) // 2 - n
    dim_b = (r - 2 * k) * (r - 2 * k + 1) // 2 - m
    stratum = k * (2 * r - 2 * k - 1) - n + m
    return DimensionReport(r, n, k, m, dim_b, stratum, dim_g - (2 * k + 1), dim_g)


def ekw_dimension_data(q: Step2Quotient, k: int, m: int) -> DimensionReport:
    return ekw_bounds(q.r, q.n, k, m)


def ekw_table(q: Step2Quotient) -> list[DimensionReport]:
    out = []
    for k in range(1, q.r // 2 + 1):
        for m in range(q.n + 1):
            try:
                out.append(ekw_bounds(q.r, q.n, k, m))
            except ValueError:
                continue
    return out


def compute_m(q: Step2Quotient, omega) -> int:
    """dim(W cap Lambda^2 spt(omega)^perp1)."""
    coords = _coords_of(omega, q.r)
    if not any(coords):
        raise ValueError("omega must be nonzero")
    if coords not in q.Wperp2:
        raise ValueError("omega is not in W^perp2")
    kernel = perp1(support(TwoVector.from_coords(coords, q.r)))
    return q.W.intersection(lambda2(kernel)).dim


# ---------------------------------------------------------------- abnormality of controls

def p_gamma(u: PiecewiseConstantControl) -> Subspace:
    """Span of the first-layer projection of the curve: the segment-break vertices."""
    return Subspace(u.rank, u.vertices())


def abnormality_criterion(u: PiecewiseConstantControl, q: Step2Quotient) -> bool:
    """True iff [P_gamma, g_1] is a proper subspace of g_2."""
    if u.rank != q.r:
        raise ValueError(f"control has {u.rank} components but the group has rank {q.r}")
    alg = q.algebra
    gens = [bracket(alg, alg.horizontal(p), alg.basis(j))[q.r:] for p in p_gamma(u).basis for j in range(q.r)]
    spanned = linalg.rank(gens) if gens else 0
    return spanned < q.d


# ---------------------------------------------------------------- abnormal set

@dataclass(frozen=True)
class AbnormalWitness:
    """omega certifies the point x_1 + x_2 (x_1 in layer 1, x_2 in layer 2).

    Entries lie in Q, or in Q(alpha) when ``point`` carries an irrational root.
    """

    omega: tuple
    q_perp: tuple
    x1: tuple
    x2: tuple
    point: PencilPoint | None = None


def verify_abnormal_witness(g: Sequence, q: Step2Quotient, omega: Sequence,
                            point: PencilPoint | None = None) -> AbnormalWitness | None:
    """Exact check that g lies in pi(spt(omega)^perp1 + Lambda^2 spt(omega)^perp1)."""
    r = q.r
    if not any(omega):
        return None
    for w in q.W.basis:
        if sum((a * b for a, b in zip(w, omega) if a and b), Fraction(0)):
            return None
    a = skew_matrix(omega, r)
    kernel = linalg.nullspace(a, r)
    x1, x2 = tuple(g[:r]), tuple(g[r:])
    if any(linalg.matvec(a, x1)):
        return None
    gens = [q.project(wedge_coords(kernel[i], kernel[j])) for i, j in itertools.combinations(range(len(kernel)), 2)]
    gens = [v for v in gens if any(v)]
    if linalg.solve_in_span(gens, x2) is None:
        return None
    return AbnormalWitness(tuple(omega), tuple(tuple(v) for v in kernel), x1, x2, point)


def _as_element(q: Step2Quotient, g: Sequence) -> tuple:
    if len(g) != q.dim:
        raise ValueError(f"expected {q.dim} coordinates, got {len(g)}")
    return tuple(Fraction(x) for x in g)


def _check_pencil_point(g, q: Step2Quotient, l1, l2, t) -> AbnormalWitness | None:
    """Direct test at t l1 + l2 (l1 alone when t is None); t may be a RealRoot."""
    if t is None:
        return verify_abnormal_witness(g, q, q.combine(l1), PencilPoint(None))
    if isinstance(t, RealRoot):
        _, alpha = _field_point(t)
        coeffs = [alpha * x + y for x, y in zip(l1, l2)]
    else:
        coeffs = [t * x + y for x, y in zip(l1, l2)]
    return verify_abnormal_witness(g, q, q.combine(coeffs), PencilPoint(t))


def _kernel_polys(mat, r: int, block: Sequence[int], det_block: Poly) -> list[list[Poly]]:
    """Polynomial kernel vectors of the pencil where det_block(t) != 0 (Cramer)."""
    free = [f for f in range(r) if f not in block]
    sub = [[mat[i][j] for j in block] for i in block]
    out = []
    for f in free:
        rhs = [-mat[i][f] for i in block]
        v = [Poly() for _ in range(r)]
        v[f] = det_block
        for col, idx in enumerate(block):
            replaced = [row[:col] + [rhs[k]] + row[col + 1:] for k, row in enumerate(sub)]
            v[idx] = _poly_det(replaced)
        out.append(v)
    return out


def _pencil_membership(g, q: Step2Quotient, l1, l2) -> MembershipResult:
    """Exact decision on the projective pencil {t l1 + l2} + {l1} inside W^{perp2}."""
    r = q.r
    x2 = g[r:]
    witness = _check_pencil_point(g, q, l1, l2, None)
    if witness:
        return MembershipResult(True, True, witness, "point at infinity of the pencil")
    c1, c2 = q.combine(l1), q.combine(l2)
    mat = _pencil(c1, c2, r)
    generic = _generic_rank(c1, c2, r)
    if generic:
        block, det_block = next((idx, m) for idx, m in _principal_minors(mat, generic) if m)
    else:
        block, det_block = (), Poly.const(1)
    kernel = _kernel_polys(mat, r, block, det_block)
    # columns of P(t): pi of wedges of kernel vectors
    cols = [[sum((e[p] * c for p, c in enumerate(wedge_coords(u, v)) if e[p]), Poly()) for e in q.eta]
            for u, v in itertools.combinations(kernel, 2)]

    def p_at(t):
        return [[p(t) for p in col] for col in cols]

    # the rank of P(t) drops only at roots of minors of degree <= d * maxdeg
    maxdeg = max((p.degree for col in cols for p in col), default=0)
    rho = max(linalg.rank(p_at(t)) for t in range(q.d * maxdeg + 1)) if cols else 0

    def x2_minors():
        """(rho + 1)-minors of [P | x2] through the x2 column."""
        for rows in itertools.combinations(range(q.d), rho + 1):
            for chosen in itertools.combinations(range(len(cols)), rho):
                yield _poly_det([[cols[c][i] for c in chosen] + [Poly.const(x2[i])] for i in rows])

    gcd_f = _gcd_until_constant(x2_minors())
    if not gcd_f:
        # x2 lies in span P(t) for every t off the bad set: verify one rational t
        t = next(Fraction(t) for t in itertools.count()
                 if det_block(Fraction(t)) and (not cols or linalg.rank(p_at(Fraction(t))) == rho))
        witness = _check_pencil_point(g, q, l1, l2, t)
        if not witness:
            raise AssertionError("generic pencil point failed verification")
        return MembershipResult(True, True, witness, "generic point of the pencil")
    special = det_block if gcd_f.degree == 0 else gcd_f * det_block
    for f, _ in factor_rational(special):
        if f.degree == 1:
            t = -f.c[0] / f.c[1]
        elif count_real_roots(f) > 0:
            t = RealRoot(f, real_root_intervals(f)[0])
        else:
            continue
        witness = _check_pencil_point(g, q, l1, l2, t)
        if witness:
            return MembershipResult(True, True, witness, "special point of the pencil")
    return MembershipResult(False, True, None, "no point of the pencil qualifies")


def abnormal_membership(g: Sequence, q: Step2Quotient, budget: SearchBudget | None = None) -> MembershipResult:
    """Is g in Abn_G? Positive answers carry an exactly verified witness.

    omega must satisfy A(omega) x_1 = 0, which cuts a linear subspace L out of
    W^{perp2}. For dim L <= 2 the search over L is exhaustive and the answer
    is certified; otherwise a seeded random search is evidence only.
    """
    budget = budget or SearchBudget()
    g = _as_element(q, g)
    r, d = q.r, q.d
    if d == 0:
        return MembershipResult(False, True, None, "W^perp2 is zero")
    x1 = g[:r]
    cols = [linalg.matvec(skew_matrix(e, r), x1) for e in q.eta]
    L = Subspace(d, linalg.nullspace(linalg.transpose(cols), d)).basis
    if not L:
        return MembershipResult(False, True, None, "no omega in W^perp2 kills the first-layer part")
    if len(L) == 1:
        witness = verify_abnormal_witness(g, q, q.combine(L[0]))
        if witness:
            return MembershipResult(True, True, witness, "unique omega up to scale")
        return MembershipResult(False, True, None, "the only admissible omega fails")
    if len(L) == 2:
        return _pencil_membership(g, q, L[0], L[1])
    for c in L:
        witness = verify_abnormal_witness(g, q, q.combine(c))
        if witness:
            return MembershipResult(True, True, witness, "basis element of the admissible omegas")
    for i in range(budget.samples):
        rng = derived_rng(budget.seed, i)
        coeffs = [random_rational(rng, budget.height) for _ in L]
        c = [sum((a * v[k] for a, v in zip(coeffs, L)), Fraction(0)) for k in range(d)]
        witness = verify_abnormal_witness(g, q, q.combine(c))
        if witness:
            return MembershipResult(True, True, witness, "random search")
    return MembershipResult(None, False, None, f"no witness among {budget.samples} random omegas")


@dataclass(frozen=True)
class AbnormalSample:
    point: tuple
    omega: TwoVector
    rank: int


def special_omegas(q: Step2Quotient) -> list[tuple]:
    """Rational elements of W^{perp2} of lower than generic rank that are easy to name."""
    out = [tuple(e) for e in q.eta]
    if q.d == 2:
        c1, c2 = q.eta
        mat = _pencil(c1, c2, q.r)
        generic = _generic_rank(c1, c2, q.r)
        g = gcd_all(m for _, m in _principal_minors(mat, generic))
        for t in rational_roots(g):
            out.append(tuple(t * x + y for x, y in zip(c1, c2)))
    return out


def sample_abnormal_points(q: Step2Quotient, count: int, seed: int = 0, height: int = 10) -> list[AbnormalSample]:
    """Seeded points of Abn_G, each with the 2-vector that generated it.

    Half the draws (in expectation) use a special low-rank omega when one is
    known, the rest a random rational combination of the eta_a.
    """
    if q.d == 0:
        raise ValueError("W^perp2 is zero: the abnormal set is not defined by this construction")
    pool = special_omegas(q)
    out = []
    for i in range(count):
        rng = derived_rng(seed, i)
        if rng.random() < 0.5:
            coords = rng.choice(pool)
        else:
            coeffs = [random_rational(rng, height) for _ in range(q.d)]
            if not any(coeffs):
                coeffs[0] = Fraction(1)
            coords = q.combine(coeffs)
        omega = TwoVector.from_coords(coords, q.r)
        kernel = linalg.nullspace(omega.matrix, q.r)
        x1 = [Fraction(0)] * q.r
        for v in kernel:
            c = random_rational(rng, height)
            x1 = [a + c * b for a, b in zip(x1, v)]
        lam = [Fraction(0)] * exterior_dim(q.r)
        for u, v in itertools.combinations(kernel, 2):
            c = random_rational(rng, height)
            lam = [a + c * b for a, b in zip(lam, wedge_coords(u, v))]
        point = tuple(x1) + q.project(lam)
        out.append(AbnormalSample(point, omega, rank(omega)))
    return out


@dataclass(frozen=True)
class AbnormalPiece:
    """pi(ker A(omega) + Lambda^2 ker A(omega)) for one omega (or a family)."""

    label: str
    rank: int
    dim: int
    basis: tuple | None  # rational basis in g when omega is rational


@dataclass(frozen=True)
class AbnormalSetDescription:
    pieces: tuple[AbnormalPiece, ...]
    dimension: tuple[int, int]  # lower, upper
    dim_G: int

    @property
    def exact(self) -> bool:
        return self.dimension[0] == self.dimension[1]

    @property
    def codimension(self) -> tuple[int, int]:
        return self.dim_G - self.dimension[1], self.dim_G - self.dimension[0]


def _piece(q: Step2Quotient, omega: Sequence) -> tuple[int, tuple | None]:
    r = q.r
    a = skew_matrix(omega, r)
    kernel = linalg.nullspace(a, r)
    gens = [tuple(v) + (Fraction(0),) * q.d for v in kernel]
    gens += [(Fraction(0),) * r + q.project(wedge_coords(u, v)) for u, v in itertools.combinations(kernel, 2)]
    gens = [v for v in gens if any(v)]
    red = linalg.rref(gens, q.dim)[0] if gens else []
    rational = all(isinstance(x, Fraction) for row in red for x in row)
    return len(red), (tuple(map(tuple, red)) if rational else None)


def abnormal_set_description(q: Step2Quotient) -> AbnormalSetDescription | None:
    """Exact stratified description of Abn_G when dim W^{perp2} <= 2, else None.

    The union over a one-parameter family of nonzero pieces is only bracketed
    (its dimension is the piece dimension or one more).
    """
    r, d = q.r, q.d
    if d == 0 or d > 2:
        return None

    def piece(label, omega):
        a = skew_matrix(omega, r)
        k = len(linalg.rref(a, r)[1]) // 2
        dim, basis = _piece(q, omega)
        return AbnormalPiece(label, k, dim, basis)

    if d == 1:
        p = piece("eta_1", q.eta[0])
        return AbnormalSetDescription((p,), (p.dim, p.dim), q.dim)
    c1, c2 = q.eta
    pieces = [piece("eta_1 (point at infinity)", c1)]
    mat = _pencil(c1, c2, r)
    generic = _generic_rank(c1, c2, r)
    g = gcd_all(m for _, m in _principal_minors(mat, generic))
    bad = []
    for f, _ in factor_rational(g):
        if f.degree == 1:
            t = -f.c[0] / f.c[1]
            bad.append(t)
            pieces.append(piece(f"{t} eta_1 + eta_2", [t * x + y for x, y in zip(c1, c2)]))
        elif count_real_roots(f) > 0:
            root = RealRoot(f, real_root_intervals(f)[0])
            _, alpha = _field_point(root)
            pieces.append(piece(f"t eta_1 + eta_2, t {root.describe()} (and conjugates)",
                                [alpha * x + y for x, y in zip(c1, c2)]))
    t0 = next(Fraction(t) for t in itertools.count() if not g or g(Fraction(t)))
    generic_piece = piece("generic t eta_1 + eta_2", [t0 * x + y for x, y in zip(c1, c2)])
    top = max(p.dim for p in pieces)
    if generic_piece.dim == 0:
        dims = (top, top)
    else:
        dims = (max(top, generic_piece.dim), max(top, generic_piece.dim + 1))
        pieces.append(AbnormalPiece("family over generic t (union)", generic_piece.rank, generic_piece.dim, None))
    return AbnormalSetDescription(tuple(pieces), dims, q.dim)
