"""Named algebras used by the self-test, the data files and the test suite."""

from __future__ import annotations

from .filiform import FiliformSpec, build_filiform
from .lie import StratifiedAlgebra
from .multivec import TwoVector
from .step2 import Step2Quotient, quotient_from_perp


def _tv(terms: dict, r: int) -> TwoVector:
    return TwoVector.from_terms(terms, r)


def heisenberg(k: int) -> Step2Quotient:
    """H^k: W^{perp2} spanned by e1^e2 + e3^e4 + ... + e_{2k-1}^e_{2k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r = 2 * k
    omega = _tv({(2 * i, 2 * i + 1): 1 for i in range(k)}, r)
    return quotient_from_perp(r, [omega], f"heisenberg-{k}")


def full_support_pencil() -> Step2Quotient:
    """Rank 4, W^{perp2} = span{e1^e2 + e3^e4, e1^e4 + e2^e3}: every nonzero element has rank 2."""
    return quotient_from_perp(4, [_tv({(0, 1): 1, (2, 3): 1}, 4), _tv({(0, 3): 1, (1, 2): 1}, 4)],
                              "full-support-pencil")


def simple_line_pencil() -> Step2Quotient:
    """Rank 4, W^{perp2} = span{e1^e2, e1^e4 + e2^e3}: only multiples of e1^e2 have rank 1."""
    return quotient_from_perp(4, [_tv({(0, 1): 1}, 4), _tv({(0, 3): 1, (1, 2): 1}, 4)],
                              "simple-line-pencil")


def engel() -> StratifiedAlgebra:
    return build_filiform(FiliformSpec("I", 3))


def free_step3_rank2() -> StratifiedAlgebra:
    """X3 = [X1, X2], X4 = [X1, X3], X5 = [X2, X3]."""
    return StratifiedAlgebra([2, 1, 2], {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}},
                             label="free step 3 rank 2")


def upper_triangular(n: int) -> StratifiedAlgebra:
    """Strictly upper-triangular n x n matrices graded by superdiagonal; [E_ij, E_jk] = E_ik."""
    if n < 3:
        raise ValueError("n must be >= 3")
    entries = [(i, i + k) for k in range(1, n) for i in range(n - k)]
    index = {e: a for a, e in enumerate(entries)}
    brackets: dict = {}
    for a, (i, j) in enumerate(entries):
        for b, (k, l) in enumerate(entries):
            if a < b:
                out = {}
                if j == k:
                    out[index[(i, l)]] = 1
                if l == i:
                    out[index[(k, j)]] = -1
                if out:
                    brackets[(a, b)] = out
    return StratifiedAlgebra(list(range(n - 1, 0, -1)), brackets, label=f"strictly upper triangular {n}x{n}")
