"""Stratified nilpotent Lie algebras given by exact structure constants.

Group elements are stored in exponential coordinates of the first kind, so a
group element and its Lie algebra logarithm share one coordinate vector and
the group law is the (finite, by nilpotency) BCH series.

Coordinates may be any commutative ring elements supporting ``+ - *`` with
Fractions (e.g. :class:`carnot_sard.polynomial.Poly`), which lets the group
law be evaluated symbolically in a parameter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .bch import MAX_DEPTH, lyndon_coefficients, standard_factorization

Element = tuple  # coordinates in the basis X_1..X_n


class StratifiedAlgebra:
    """Graded Lie algebra g_1 + ... + g_s with basis ordered layer by layer.

    ``brackets`` maps index pairs (i, j) to the coordinate vector of [X_i, X_j]
    (dense sequence of length n, or a sparse ``{k: c}`` dict). Either
    orientation may be given; contradictory or diagonal entries are kept and
    reported by :func:`validate` rather than rejected here.
    """

    def __init__(self, layer_dims: Sequence[int], brackets: Mapping, names: Sequence[str] | None = None,
                 label: str = ""):
        self.layer_dims = tuple(int(d) for d in layer_dims)
        if not self.layer_dims or any(d < 1 for d in self.layer_dims):
            raise ValueError("layer dimensions must be positive")
        n = sum(self.layer_dims)
        self.dim = n
        self.label = label
        self.names = tuple(names) if names else tuple(f"X{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("one name per basis vector required")
        raw = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bracket index {(i, j)} out of range (n={n})")
            raw[(i, j)] = self._densify(vec)
        self._raw = raw
        canon: dict[tuple[int, int], tuple] = {}
        for (i, j), vec in raw.items():
            if i < j:
                canon[(i, j)] = vec
        for (i, j), vec in raw.items():
            if i > j and (j, i) not in canon:
                canon[(j, i)] = tuple(-c for c in vec)
        self._table = {k: v for k, v in canon.items() if any(v)}
        self._sparse = tuple((i, j, tuple((k, c) for k, c in enumerate(v) if c))
                             for (i, j), v in sorted(self._table.items()))
        self._layer_of = tuple(itertools.chain.from_iterable([k] * d for k, d in enumerate(self.layer_dims, 1)))

    def _densify(self, vec) -> tuple:
        n = self.dim
        if isinstance(vec, Mapping):
            out = [Fraction(0)] * n
            for k, c in vec.items():
                out[k] += Fraction(c)
            return tuple(out)
        if len(vec) != n:
            raise ValueError(f"bracket vector must have length {n}")
        return tuple(Fraction(c) for c in vec)

    @property
    def rank(self) -> int:
        return self.layer_dims[0]

    @property
    def step(self) -> int:
        return len(self.layer_dims)

    def layer_of(self, i: int) -> int:
        return self._layer_of[i]

    def layer_indices(self, k: int) -> range:
        start = sum(self.layer_dims[: k - 1])
        return range(start, start + self.layer_dims[k - 1])

    def structure_constants(self) -> dict[tuple[int, int], tuple]:
        """Canonical (i < j) nonzero brackets."""
        return dict(self._table)

    def basis(self, i: int) -> Element:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def zero(self) -> Element:
        return (Fraction(0),) * self.dim

    def element(self, coords: Sequence) -> Element:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(Fraction(c) for c in coords)

    def horizontal(self, u: Sequence) -> Element:
        """X_u = u_1 X_1 + ... + u_r X_r."""
        if len(u) != self.rank:
            raise ValueError(f"first-layer vector must have length {self.rank}, got {len(u)}")
        return tuple(Fraction(c) for c in u) + (Fraction(0),) * (self.dim - self.rank)

    def __repr__(self) -> str:
        return f"StratifiedAlgebra({self.label or 'unnamed'}, layers={list(self.layer_dims)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, StratifiedAlgebra) and self.layer_dims == other.layer_dims
                and self._table == other._table)

    def __hash__(self) -> int:
        return hash((self.layer_dims, tuple(sorted(self._table.items()))))


@dataclass(frozen=True)
class Violation:
    kind: str  # antisymmetry | jacobi | grading | generation
    indices: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def bracket(algebra: StratifiedAlgebra, x: Sequence, y: Sequence) -> Element:
    n = algebra.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"dimension mismatch: {len(x)}, {len(y)} vs algebra dimension {n}")
    out = [Fraction(0)] * n
    for i, j, vec in algebra._sparse:
        xi, xj, yi, yj = x[i], x[j], y[i], y[j]
        if xi and yj:
            coef = xi * yj - xj * yi if (xj and yi) else xi * yj
        elif xj and yi:
            coef = -(xj * yi)
        else:
            continue
        if not coef:
            continue
        for k, c in vec:
            out[k] = out[k] + coef * c
    return tuple(out)


def ad_operator(algebra: StratifiedAlgebra, x: Sequence) -> list[list]:
    """Matrix of ad_x (columns are [x, X_j])."""
    cols = [bracket(algebra, x, algebra.basis(j)) for j in range(algebra.dim)]
    return linalg.transpose(cols)


def validate(algebra: StratifiedAlgebra) -> ValidationReport:
    """Exact check of antisymmetry, Jacobi, grading and layer generation."""
    n = algebra.dim
    out: list[Violation] = []
    for (i, j), vec in sorted(algebra._raw.items()):
        if i == j and any(vec):
            out.append(Violation("antisymmetry", (i, i), f"[{algebra.names[i]},{algebra.names[i]}] != 0"))
        elif i > j and (j, i) in algebra._raw:
            if any(a != -b for a, b in zip(vec, algebra._raw[(j, i)])):
                out.append(Violation("antisymmetry", (j, i),
                                     f"[{algebra.names[i]},{algebra.names[j]}] != -[{algebra.names[j]},{algebra.names[i]}]"))
    basis = [algebra.basis(i) for i in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        xi, xj, xk = basis[i], basis[j], basis[k]
        total = [a + b + c for a, b, c in zip(
            bracket(algebra, xi, bracket(algebra, xj, xk)),
            bracket(algebra, xj, bracket(algebra, xk, xi)),
            bracket(algebra, xk, bracket(algebra, xi, xj)))]
        if any(total):
            out.append(Violation("jacobi", (i, j, k), f"Jacobi fails on ({algebra.names[i]},{algebra.names[j]},{algebra.names[k]})"))
    s = algebra.step
    for (i, j), vec in sorted(algebra._table.items()):
        target = algebra.layer_of(i) + algebra.layer_of(j)
        bad = [k for k, c in enumerate(vec) if c and algebra.layer_of(k) != target]
        if bad:
            where = "beyond the last layer" if target > s else f"outside layer {target}"
            out.append(Violation("grading", (i, j), f"[{algebra.names[i]},{algebra.names[j]}] has components {where}"))
    for k in range(1, s):
        gens = [bracket(algebra, basis[a], basis[b])
                for a in algebra.layer_indices(1) for b in algebra.layer_indices(k)]
        layer = list(algebra.layer_indices(k + 1))
        restricted = [[g[c] for c in layer] for g in gens]
        rk = linalg.rank(restricted) if restricted else 0
        if rk < len(layer):
            out.append(Violation("generation", (k + 1,), f"[g_1, g_{k}] spans only {rk} of {len(layer)} dims of g_{k + 1}"))
    return ValidationReport(tuple(out))


def _lyndon_terms(depth: int):
    return lyndon_coefficients(depth) if depth > 0 else ()


def bch_product(algebra: StratifiedAlgebra, x: Sequence, y: Sequence, depth: int | None = None) -> Element:
    """log(exp(x) exp(y)), truncated after bracket depth ``depth`` (default: the step)."""
    n = algebra.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"dimension mismatch: {len(x)}, {len(y)} vs algebra dimension {n}")
    if depth is None:
        depth = algebra.step
    if depth > MAX_DEPTH:
        raise ValueError(f"step {depth} exceeds the precomputed BCH depth {MAX_DEPTH}")
    memo: dict = {(0,): tuple(x), (1,): tuple(y)}

    def value(w):
        v = memo.get(w)
        if v is None:
            u, rest = standard_factorization(w)
            a, b = value(u), value(rest)
            v = bracket(algebra, a, b) if (any(a) and any(b)) else (Fraction(0),) * n
            memo[w] = v
        return v

    out = [Fraction(0)] * n
    for w, c in _lyndon_terms(depth):
        v = value(w)
        for k, vk in enumerate(v):
            if vk:
                out[k] = out[k] + c * vk
    return tuple(out)


def group_product(algebra: StratifiedAlgebra, *elements: Sequence) -> Element:
    """Left-to-right product exp(a) exp(b) ... in exponential coordinates."""
    acc = algebra.zero()
    for e in elements:
        acc = bch_product(algebra, acc, e)
    return acc


def inverse(x: Sequence) -> Element:
    return tuple(-c for c in x)
