"""Exact rational scalars: parsing, formatting and bounded-height sampling."""

from __future__ import annotations

import random
from fractions import Fraction

Q = Fraction


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"-3"`` or an int into a reduced Fraction.

    Floats are rejected: a binary float is not an exact input.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if not s:
            raise ValueError("empty rational")
        if any(c in s for c in ".eE"):
            raise ValueError(f"decimal notation not allowed, use p/q: {text!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    raise ValueError(f"not a rational: {text!r}")


def format_rational(x) -> str:
    """Serialize exactly as ``p/q`` (or ``p`` for integers)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def random_rational(rng: random.Random, height: int = 10, nonzero: bool = False) -> Fraction:
    """Draw p/q with |p| <= height and 1 <= q <= height."""
    while True:
        x = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if x or not nonzero:
            return x


def random_vector(rng: random.Random, n: int, height: int = 10) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng, height) for _ in range(n))


def derived_rng(seed: int, index: int) -> random.Random:
    """Independent stream for task ``index`` under master ``seed``."""
    return random.Random(f"{seed}:{index}")
