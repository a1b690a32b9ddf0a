"""Result types shared by the abnormal-set membership procedures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Poly


@dataclass(frozen=True)
class RealRoot:
    """A real algebraic number: the root of ``poly`` (irreducible over Q) inside ``interval``."""

    poly: Poly
    interval: tuple[Fraction, Fraction]

    def describe(self) -> str:
        lo, hi = self.interval
        return f"root of {self.poly!r} in [{lo}, {hi}]"


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a membership query.

    ``member`` is True with an exactly verified ``witness``, False when
    non-membership is ``certified``, and None when a bounded search found no
    witness (evidence only).
    """

    member: bool | None
    certified: bool
    witness: object = None
    detail: str = ""

    @property
    def status(self) -> str:
        if self.member:
            return "witness"
        return "certified-none" if self.certified else "no-witness-found"

    def __bool__(self) -> bool:
        return bool(self.member)
