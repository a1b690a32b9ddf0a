"""Seeded random generators for controls, 2-vectors and step-2 groups."""

from __future__ import annotations

import random
from fractions import Fraction

from .endpoint import PiecewiseConstantControl
from .multivec import TwoVector, exterior_dim, wedge
from .rational import random_rational, random_vector
from .step2 import Step2Quotient, build_quotient


def random_durations(rng: random.Random, m: int, height: int = 10) -> list[Fraction]:
    weights = [Fraction(rng.randint(1, height)) for _ in range(m)]
    total = sum(weights)
    return [w / total for w in weights]


def random_control(rng: random.Random, rank: int, max_segments: int = 5, height: int = 10,
                   zero_prob: float = 0.15) -> PiecewiseConstantControl:
    """Random segments; each component is zeroed with probability ``zero_prob``."""
    m = rng.randint(1, max_segments)
    segs = []
    for d in random_durations(rng, m, height):
        v = [Fraction(0) if rng.random() < zero_prob else random_rational(rng, height) for _ in range(rank)]
        segs.append((d, v))
    return PiecewiseConstantControl(segs)


def random_staircase(rng: random.Random, max_moves: int = 6, height: int = 10,
                     violate: str = "") -> PiecewiseConstantControl:
    """Axis-parallel planar path whose horizontal moves all sit at one height a.

    With ``violate="ii"`` a final horizontal move happens off that height
    (only the common-level condition fails); with ``violate="i"`` one move is
    made diagonal.
    """
    a = random_rational(rng, height)
    level = Fraction(0)
    moves = []  # displacements (dx, dy)
    zero = Fraction(0)
    for _ in range(rng.randint(1, max_moves)):
        if level == a and rng.random() < 0.5:
            moves.append((random_rational(rng, height, nonzero=True), zero))
            continue
        dy = a - level if (level != a and rng.random() < 0.5) else random_rational(rng, height, nonzero=True)
        moves.append((zero, dy))
        level += dy
    if not any(dx for dx, _ in moves):
        if level != a:
            moves.append((zero, a - level))
        moves.append((random_rational(rng, height, nonzero=True), zero))
    if violate == "ii":
        level = sum(dy for _, dy in moves)
        moves.append((zero, a - level + random_rational(rng, height, nonzero=True)))
        moves.append((random_rational(rng, height, nonzero=True), zero))
    elif violate == "i":
        i = rng.randrange(len(moves))
        moves[i] = (random_rational(rng, height, nonzero=True), random_rational(rng, height, nonzero=True))
    durations = random_durations(rng, len(moves), height)
    return PiecewiseConstantControl([(d, (dx / d, dy / d)) for d, (dx, dy) in zip(durations, moves)])


def random_two_vector(rng: random.Random, r: int, height: int = 10, terms: int | None = None) -> TwoVector:
    """Sum of ``terms`` random simple 2-vectors (a fully random one when terms is None)."""
    if terms is None:
        return TwoVector.from_coords(random_vector(rng, exterior_dim(r), height), r)
    out = TwoVector.zero(r)
    for _ in range(terms):
        out = out + wedge(random_vector(rng, r, height), random_vector(rng, r, height))
    return out


def random_quotient(rng: random.Random, r: int, height: int = 3, n: int | None = None) -> Step2Quotient:
    """Step-2 quotient with a random W of dimension n (random when None, W proper)."""
    big = exterior_dim(r)
    if n is None:
        n = rng.randint(0, big - 1)
    gens = [random_vector(rng, big, height) for _ in range(n)]
    return build_quotient(r, gens, label=f"random r={r} n<={n}")
