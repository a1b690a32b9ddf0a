from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from carnot_sard import linalg
from carnot_sard.multivec import (Subspace, TwoVector, decompose, exterior_dim, lambda2, pair_index, pairs,
                                  perp1, perp2, rank, rank_certificate, span_two_vectors, support, wedge)

from conftest import F, rationals, vectors


def two_vectors(max_r=7, height=6):
    """Mix of sums of few simple 2-vectors (low rank) and dense ones."""
    def build(r):
        dense = vectors(exterior_dim(r), height).map(lambda c: TwoVector.from_coords(c, r))
        sparse = st.lists(st.tuples(vectors(r, height), vectors(r, height)), max_size=r // 2).map(
            lambda fs: sum((wedge(f, g) for f, g in fs), TwoVector.zero(r)))
        return st.one_of(dense, sparse)
    return st.integers(2, max_r).flatmap(build)


def test_pair_basis_is_lexicographic():
    assert pairs(4) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert pair_index(4)[(1, 3)] == 4
    assert exterior_dim(5) == 10


def test_constructors_agree():
    a = TwoVector.from_terms({(0, 1): 1, (3, 2): 2}, 4)
    b = TwoVector.from_coords(F(1, 0, 0, 0, 0, -2), 4)
    assert a == b
    assert a.terms() == {(0, 1): 1, (2, 3): -2}


def test_matrix_must_be_skew():
    with pytest.raises(ValueError):
        TwoVector([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        TwoVector([[1, 0], [0, 0]])


@given(vectors(5), vectors(5))
def test_wedge_is_antisymmetric_and_simple(v, w):
    assert wedge(v, w) == -wedge(w, v)
    assert rank(wedge(v, w)) == (1 if linalg.rank([v, w]) == 2 else 0)


@given(two_vectors())
def test_rank_is_half_matrix_rank(omega):
    assert rank(omega) * 2 == sympy.Matrix(omega.matrix).rank()


@given(two_vectors())
def test_support_is_column_space(omega):
    spt = support(omega)
    assert spt.dim == 2 * rank(omega)
    for col in linalg.transpose(omega.matrix):
        assert tuple(col) in spt
    # omega lies in the exterior square of its support
    assert omega.coords() in lambda2(spt)


@given(two_vectors(max_r=6))
def test_rank_certificate(omega):
    k = rank(omega)
    cert = rank_certificate(omega, k)
    assert cert.holds
    if k:
        assert cert.rank_minor is not None and cert.rank_minor.value
        below = rank_certificate(omega, k - 1)
        assert not below.holds and below.nonzero_minor.value


@given(two_vectors(max_r=8))
def test_decomposition(omega):
    dec = decompose(omega)
    assert dec.reconstruct() == omega
    assert dec.k == rank(omega)
    factors = [v for pair in dec.terms for v in pair]
    assert linalg.rank(factors) == 2 * dec.k if factors else dec.k == 0


def test_decomposition_of_symplectic_form():
    omega = TwoVector.from_terms({(0, 1): 1, (2, 3): 1, (4, 5): 1}, 6)
    dec = decompose(omega)
    assert dec.k == 3
    assert dec.reconstruct() == omega
    assert sorted(dec.basis_permutation) == list(range(6))


def test_perp_and_lambda2():
    v = Subspace(4, [F(1, 0, 0, 0), F(0, 1, 0, 0)])
    assert perp1(v) == Subspace(4, [F(0, 0, 1, 0), F(0, 0, 0, 1)])
    l2 = lambda2(perp1(v))
    assert l2.dim == 1 and F(0, 0, 0, 0, 0, 1) in l2
    w = span_two_vectors([TwoVector.from_terms({(0, 1): 1}, 4)], 4)
    assert perp2(w).dim == 5
    assert (perp2(w) + w).dim == 6
    assert perp2(w).intersection(w).dim == 0


def test_perp2_checks_ambient_dimension():
    with pytest.raises(ValueError):
        perp2(Subspace(5, []))


@given(st.integers(2, 6).flatmap(lambda r: st.tuples(st.just(r), st.lists(vectors(r, 4), max_size=r))))
def test_lambda2_dimension(data):
    r, vs = data
    d = linalg.rank(vs) if vs else 0
    assert lambda2(Subspace(r, vs)).dim == d * (d - 1) // 2
