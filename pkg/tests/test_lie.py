from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carnot_sard import catalog, lie
from carnot_sard.bch import associative_log, is_lyndon, lyndon_coefficients, standard_factorization
from carnot_sard.filiform import FiliformSpec, build_filiform
from carnot_sard.lie import StratifiedAlgebra, bch_product, bracket, group_product, inverse, validate

from conftest import F, vectors
from oracles import from_matrix, madd, mexp, mlog, mm, to_matrix


@pytest.mark.parametrize("n", [3, 4, 5])
@given(data=st.data())
def test_group_law_matches_matrix_exponential(n, data):
    alg = catalog.upper_triangular(n)
    x = data.draw(vectors(alg.dim, 6))
    y = data.draw(vectors(alg.dim, 6))
    expected = from_matrix(n, mlog(mm(mexp(to_matrix(n, x)), mexp(to_matrix(n, y)))))
    assert bch_product(alg, x, y) == expected


@pytest.mark.parametrize("n", [3, 4, 5])
@given(data=st.data())
def test_bracket_matches_commutator(n, data):
    alg = catalog.upper_triangular(n)
    x, y = data.draw(vectors(alg.dim, 6)), data.draw(vectors(alg.dim, 6))
    a, b = to_matrix(n, x), to_matrix(n, y)
    assert bracket(alg, x, y) == from_matrix(n, madd(mm(a, b), mm(b, a), -1))


# ---------------------------------------------------------------- BCH table

def test_low_order_bch_coefficients():
    table = dict(lyndon_coefficients(3))
    assert table[(0,)] == 1 and table[(1,)] == 1
    assert table[(0, 1)] == Fraction(1, 2)
    assert table[(0, 0, 1)] == Fraction(1, 12)
    assert table[(0, 1, 1)] == Fraction(1, 12)


def test_degree_four_term_is_single_bracket():
    # -1/24 [y,[x,[x,y]]] = 1/24 [[x,[x,y]],y] in the Lyndon basis
    table = {w: c for w, c in lyndon_coefficients(4) if len(w) == 4}
    assert table == {(0, 0, 1, 1): Fraction(1, 24)}


def test_lyndon_machinery():
    assert is_lyndon((0, 0, 1)) and not is_lyndon((0, 1, 0))
    assert standard_factorization((0, 0, 1, 1)) == ((0,), (0, 1, 1))
    log = associative_log(2)
    assert log[(0, 1)] == Fraction(1, 2) and log[(1, 0)] == Fraction(-1, 2)


def test_depth_limit():
    alg = build_filiform(FiliformSpec("I", 13))
    with pytest.raises(ValueError):
        bch_product(alg, alg.zero(), alg.zero())


# ---------------------------------------------------------------- validation

def test_valid_catalog_algebras():
    for alg in [catalog.engel(), catalog.free_step3_rank2(), catalog.upper_triangular(5),
                build_filiform(FiliformSpec("II", 7))]:
        assert validate(alg).ok, alg


def test_violations_are_classified():
    asym = StratifiedAlgebra([2, 1], {(0, 1): {2: 1}, (1, 0): {2: 1}})
    assert validate(asym).kinds() == {"antisymmetry"}
    diag = StratifiedAlgebra([2, 1], {(0, 1): {2: 1}, (0, 0): {2: 1}})
    assert "antisymmetry" in validate(diag).kinds()
    grading = StratifiedAlgebra([2, 1, 1], {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {2: 1}})
    assert "grading" in validate(grading).kinds()
    generation = StratifiedAlgebra([2, 2], {(0, 1): {2: 1}})
    assert validate(generation).kinds() == {"generation"}


def test_jacobi_failure_detected():
    # [X2,[X3,X1]] = -[X2,X4] = -X5 while the other two Jacobi terms vanish
    broken = StratifiedAlgebra([2, 1, 1, 1], {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}, (1, 3): {4: 1}})
    report = validate(broken)
    assert report.kinds() == {"jacobi"}
    assert report.violations[0].indices == (0, 1, 2)
    fixed = StratifiedAlgebra([2, 1, 1, 1], {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}})
    assert validate(fixed).ok


def test_constructor_rejects_bad_shapes():
    with pytest.raises(ValueError):
        StratifiedAlgebra([2, 0], {})
    with pytest.raises(ValueError):
        StratifiedAlgebra([2, 1], {(0, 5): {2: 1}})
    with pytest.raises(ValueError):
        StratifiedAlgebra([2, 1], {(0, 1): [1, 2]})


# ---------------------------------------------------------------- group law

@given(vectors(4), vectors(4), vectors(4))
def test_engel_group_axioms(x, y, z):
    alg = catalog.engel()
    assert group_product(alg, group_product(alg, x, y), z) == group_product(alg, x, y, z)
    assert group_product(alg, x, inverse(x)) == alg.zero()


def test_heisenberg_product_formula():
    alg = catalog.heisenberg(1).algebra
    x, y = F(1, 2, 3), F(4, 5, 6)
    assert bch_product(alg, x, y) == F(5, 7, 9 + Fraction(1, 2) * (1 * 5 - 2 * 4))


def test_horizontal_and_element_checks():
    alg = catalog.engel()
    assert alg.horizontal((1, 2)) == F(1, 2, 0, 0)
    with pytest.raises(ValueError):
        alg.horizontal((1, 2, 3))
    with pytest.raises(ValueError):
        bch_product(alg, F(1), F(1))
    assert lie.ad_operator(alg, alg.basis(0))[2][1] == 1
