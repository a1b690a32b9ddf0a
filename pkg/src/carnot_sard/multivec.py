"""Exterior algebra of 2-vectors over Q.

A 2-vector on V = Q^r is stored as its skew-symmetric r x r matrix A, with
``omega(A) = sum_{i<j} A[i][j] e_i ^ e_j``. Coordinates on the exterior square
are indexed by pairs (i, j), i < j, in lexicographic order; with the declared
basis of V orthonormal these pairs form an orthonormal basis, so orthogonal
complements are plain null spaces.

Indices are 0-based throughout the Python API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg

Vec = tuple  # tuple[Fraction, ...] of length r


def basis_vector(i: int, r: int) -> Vec:
    return tuple(Fraction(int(k == i)) for k in range(r))


@lru_cache(maxsize=None)
def pairs(r: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(r), 2))


@lru_cache(maxsize=None)
def pair_index(r: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pairs(r))}


def exterior_dim(r: int) -> int:
    return r * (r - 1) // 2


def rank_from_exterior_dim(n: int) -> int:
    r = 0
    while exterior_dim(r) < n:
        r += 1
    if exterior_dim(r) != n:
        raise ValueError(f"{n} is not of the form r(r-1)/2")
    return r


class TwoVector:
    """Element of the exterior square of Q^r, held as a skew matrix."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix: Sequence[Sequence]):
        r = len(matrix)
        mat = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if any(len(row) != r for row in mat):
            raise ValueError("2-vector matrix must be square")
        for i in range(r):
            if mat[i][i]:
                raise ValueError("2-vector matrix must have zero diagonal")
            for j in range(i + 1, r):
                if mat[i][j] != -mat[j][i]:
                    raise ValueError("2-vector matrix must be skew-symmetric")
        self.dim = r
        self.matrix = mat

    @classmethod
    def zero(cls, r: int) -> "TwoVector":
        return cls([[0] * r for _ in range(r)])

    @classmethod
    def from_coords(cls, coords: Sequence, r: int) -> "TwoVector":
        if len(coords) != exterior_dim(r):
            raise ValueError(f"expected {exterior_dim(r)} coordinates for r={r}, got {len(coords)}")
        m = [[Fraction(0)] * r for _ in range(r)]
        for (i, j), c in zip(pairs(r), coords):
            c = Fraction(c)
            m[i][j] = c
            m[j][i] = -c
        return cls(m)

    @classmethod
    def from_terms(cls, terms: dict, r: int) -> "TwoVector":
        """``{(i, j): c}`` meaning sum of c e_i ^ e_j (any orientation)."""
        m = [[Fraction(0)] * r for _ in range(r)]
        for (i, j), c in terms.items():
            if not (0 <= i < r and 0 <= j < r):
                raise ValueError(f"index pair {(i, j)} out of range for r={r}")
            if i == j:
                continue
            c = Fraction(c)
            m[i][j] += c
            m[j][i] -= c
        return cls(m)

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(self.matrix[i][j] for i, j in pairs(self.dim))

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {p: c for p, c in zip(pairs(self.dim), self.coords()) if c}

    def _check(self, other: "TwoVector") -> None:
        if not isinstance(other, TwoVector) or other.dim != self.dim:
            raise ValueError("2-vectors of different dimension")

    def __add__(self, other: "TwoVector") -> "TwoVector":
        self._check(other)
        return TwoVector([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)])

    def __sub__(self, other: "TwoVector") -> "TwoVector":
        return self + (-other)

    def __neg__(self) -> "TwoVector":
        return TwoVector([[-a for a in row] for row in self.matrix])

    def __mul__(self, scalar) -> "TwoVector":
        s = Fraction(scalar)
        return TwoVector([[a * s for a in row] for row in self.matrix])

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(any(row) for row in self.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoVector) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*e{i + 1}^e{j + 1}" for (i, j), c in self.terms().items()) or "0"
        return f"TwoVector({body})"


class Subspace:
    """Subspace of Q^n with a reduced row-echelon basis (canonical, so == is equality)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [tuple(Fraction(x) for x in v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, piv = linalg.rref(rows, ambient_dim) if rows else ([], [])
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, linalg.identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence) -> bool:
        return linalg.solve_in_span(self.basis, v) is not None

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        return linalg.solve_in_span(self.basis, v)

    def __le__(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and other.ambient_dim == self.ambient_dim
                and other.basis == self.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def orthogonal_complement(self) -> "Subspace":
        return Subspace(self.ambient_dim, linalg.nullspace(self.basis, self.ambient_dim))

    def intersection(self, other: "Subspace") -> "Subspace":
        return (self.orthogonal_complement() + other.orthogonal_complement()).orthogonal_complement()


def wedge(v: Sequence, w: Sequence) -> TwoVector:
    """v ^ w, i.e. the skew matrix v w^T - w v^T."""
    if len(v) != len(w):
        raise ValueError(f"dimension mismatch: {len(v)} vs {len(w)}")
    v = [Fraction(x) for x in v]
    w = [Fraction(x) for x in w]
    return TwoVector([[vi * wj - wi * vj for wj, vj in zip(w, v)] for vi, wi in zip(v, w)])


def wedge_coords(v: Sequence, w: Sequence) -> list:
    """Lexicographic pair coordinates of v ^ w over any field (no TwoVector built)."""
    return [v[i] * w[j] - v[j] * w[i] for i, j in pairs(len(v))]


def rank(omega: TwoVector) -> int:
    """Rank of a 2-vector: half the matrix rank (fraction-free elimination)."""
    mr = linalg.integer_rank(omega.matrix)
    assert mr % 2 == 0, "skew matrix of odd rank"
    return mr // 2


def support(omega: TwoVector) -> Subspace:
    """Smallest W with omega in the exterior square of W: the column space of A."""
    return Subspace(omega.dim, omega.matrix)


@dataclass(frozen=True)
class Minor:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class MinorsCertificate:
    """Determinantal evidence for ``rank(omega) <= k``.

    ``holds`` is true iff every minor of order 2k+1 vanishes. When it fails,
    ``nonzero_minor`` is one offending minor; when the rank is exactly k,
    ``rank_minor`` is a nonzero minor of order 2k.
    """

    k: int
    order: int
    holds: bool
    minors_checked: int
    nonzero_minor: Minor | None = None
    rank_minor: Minor | None = None


def _minor(mat, rows, cols) -> Fraction:
    return linalg.det([[mat[i][j] for j in cols] for i in rows])


def rank_certificate(omega: TwoVector, k: int) -> MinorsCertificate:
    if k < 0:
        raise ValueError("k must be non-negative")
    r = omega.dim
    order = 2 * k + 1
    mat = omega.matrix
    checked = 0
    bad = None
    if order <= r:
        for rows in itertools.combinations(range(r), order):
            for cols in itertools.combinations(range(r), order):
                checked += 1
                val = _minor(mat, rows, cols)
                if val:
                    bad = Minor(rows, cols, val)
                    break
            if bad:
                break
    rank_minor = None
    if bad is None:
        if k == 0:
            rank_minor = Minor((), (), Fraction(1))
        elif 2 * k <= r:
            for rows in itertools.combinations(range(r), 2 * k):
                for cols in itertools.combinations(range(r), 2 * k):
                    val = _minor(mat, rows, cols)
                    if val:
                        rank_minor = Minor(rows, cols, val)
                        break
                if rank_minor:
                    break
    return MinorsCertificate(k, order, bad is None, checked, bad, rank_minor)


@dataclass(frozen=True)
class SimpleDecomposition:
    """omega = sum_t f_t ^ g_t obtained by peeling one simple factor at a time.

    ``coefficients[t]`` holds ``lambda`` (the pivot entry), and the dicts ``a``
    and ``b`` of the f- and g-components on the basis indices not yet used as
    pivots, keyed by original basis index. ``basis_permutation`` lists the pivot
    pairs in peeling order followed by the untouched indices.
    """

    dim: int
    terms: tuple[tuple[Vec, Vec], ...]
    coefficients: tuple[dict, ...] = field(default=())
    basis_permutation: tuple[int, ...] = field(default=())

    @property
    def k(self) -> int:
        return len(self.terms)

    def reconstruct(self) -> TwoVector:
        out = TwoVector.zero(self.dim)
        for f, g in self.terms:
            out = out + wedge(f, g)
        return out


def decompose(omega: TwoVector) -> SimpleDecomposition:
    """Split omega into rank(omega) simple 2-vectors.

    With pivot entry A[p][q] != 0 of the current residual A,
    ``f = A[:, q]`` and ``g = e_q + sum_{j != p, q} (A[p][j] / A[p][q]) e_j``
    give a simple f ^ g agreeing with A on rows and columns p, q; the residual
    A - f ^ g vanishes there and has rank one less.
    """
    r = omega.dim
    a = [list(row) for row in omega.matrix]
    terms = []
    coeffs = []
    used: list[int] = []
    while True:
        piv = next(((p, q) for p in range(r) for q in range(p + 1, r) if a[p][q]), None)
        if piv is None:
            break
        p, q = piv
        apq = a[p][q]
        f = tuple(a[i][q] for i in range(r))
        g = tuple(Fraction(1) if j == q else (Fraction(0) if j == p else a[p][j] / apq) for j in range(r))
        used += [p, q]
        rest = [s for s in range(r) if s not in used]
        coeffs.append({
            "lambda": apq,
            "a": {s: f[s] for s in rest},
            "b": {s: g[s] for s in rest},
        })
        terms.append((f, g))
        simple = wedge(f, g).matrix
        a = [[x - y for x, y in zip(ra, rs)] for ra, rs in zip(a, simple)]
    perm = tuple(used + [s for s in range(r) if s not in used])
    return SimpleDecomposition(r, tuple(terms), tuple(coeffs), perm)


def perp1(space: Subspace) -> Subspace:
    """Orthogonal complement inside V (declared basis orthonormal)."""
    return space.orthogonal_complement()


def perp2(space: Subspace) -> Subspace:
    """Orthogonal complement inside the exterior square (pair basis orthonormal)."""
    rank_from_exterior_dim(space.ambient_dim)
    return space.orthogonal_complement()


def lambda2(space: Subspace) -> Subspace:
    """Exterior square of a subspace of V, as a subspace of the exterior square of V."""
    r = space.ambient_dim
    gens = [wedge_coords(space.basis[i], space.basis[j])
            for i, j in itertools.combinations(range(space.dim), 2)]
    return Subspace(exterior_dim(r), gens)


def span_two_vectors(omegas: Iterable[TwoVector], r: int) -> Subspace:
    return Subspace(exterior_dim(r), [w.coords() for w in omegas])
