from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carnot_sard import catalog, endpoint, linalg
from carnot_sard.endpoint import (PiecewiseConstantControl, flow_endpoint, fundamental_solution, image_span,
                                  is_singular, iterated_integral_oracle, nilpotent_exp)
from carnot_sard.filiform import FiliformSpec, build_filiform
from carnot_sard.sampling import random_control

from conftest import F
from oracles import from_matrix, mexp, minv, mlog, mm, to_matrix

seeds = st.integers(0, 10 ** 6)


def control_for(alg, seed, **kw):
    return random_control(random.Random(seed), alg.rank, **kw)


# ---------------------------------------------------------------- controls

def test_control_validation():
    with pytest.raises(ValueError):
        PiecewiseConstantControl([])
    with pytest.raises(ValueError):
        PiecewiseConstantControl([(Fraction(1, 2), (1, 0))])
    with pytest.raises(ValueError):
        PiecewiseConstantControl([(0, (1, 0)), (1, (0, 1))])
    with pytest.raises(ValueError):
        PiecewiseConstantControl([(Fraction(1, 2), (1, 0)), (Fraction(1, 2), (1,))])


def test_control_geometry():
    u = PiecewiseConstantControl([(Fraction(1, 4), (4, 0)), (Fraction(3, 4), (0, 4))])
    assert u.breaks == F(0, Fraction(1, 4), 1)
    assert u.vertices() == [F(0, 0), F(1, 0), F(1, 3)]
    assert u.restricted(Fraction(1, 2)) == [(Fraction(1, 4), F(4, 0)), (Fraction(1, 4), F(0, 4))]
    assert u.split(1, Fraction(1, 3)).vertices()[-1] == F(1, 3)
    assert PiecewiseConstantControl.uniform([(1, 0), (0, 1)]).concatenate(u).vertices()[-1] == F(Fraction(3, 2), Fraction(7, 2))
    with pytest.raises(ValueError):
        u.split(0, 1)


# ---------------------------------------------------------------- matrix-group oracles

@pytest.mark.parametrize("n", [3, 4, 5])
@given(seed=seeds)
def test_endpoint_matches_matrix_product(n, seed):
    alg = catalog.upper_triangular(n)
    u = control_for(alg, seed, height=6)
    g = None
    for d, v in u.segments:
        step = mexp(to_matrix(n, [d * c for c in alg.horizontal(v)]))
        g = step if g is None else mm(g, step)
    assert flow_endpoint(u, alg) == from_matrix(n, mlog(g))


@pytest.mark.parametrize("n", [3, 4])
@given(seed=seeds, cut=st.fractions(0, 1))
def test_fundamental_solution_is_adjoint_action(n, seed, cut):
    """Phi(t) Y = g(t) Y g(t)^{-1} with g(t) the curve at time t."""
    alg = catalog.upper_triangular(n)
    u = control_for(alg, seed, height=6)
    fs = fundamental_solution(u, alg)
    t = Fraction(cut)
    g = mexp(to_matrix(n, [0] * alg.dim))
    for d, v in u.restricted(t):
        g = mm(g, mexp(to_matrix(n, [d * c for c in alg.horizontal(v)])))
    for y in range(alg.dim):
        yy = to_matrix(n, alg.basis(y))
        assert fs.apply(t, alg.basis(y)) == from_matrix(n, mm(mm(g, yy), minv(g)))


@given(seed=seeds)
def test_fundamental_solution_matches_iterated_integrals(seed):
    alg = build_filiform(FiliformSpec("II", 5))
    u = control_for(alg, seed, height=5)
    fs = fundamental_solution(u, alg)
    for t in u.breaks + (Fraction(1, 3),):
        for y in range(alg.rank):
            total = list(alg.basis(y))
            for j in range(1, alg.step):
                total = [a + b for a, b in zip(total, iterated_integral_oracle(u, alg, j, t, alg.basis(y)))]
            assert fs.apply(t, alg.basis(y)) == tuple(total)


def test_oracle_argument_checks():
    alg = catalog.engel()
    u = PiecewiseConstantControl.constant((1, 0))
    with pytest.raises(ValueError):
        iterated_integral_oracle(u, alg, 0, 1, alg.basis(0))
    assert iterated_integral_oracle(u, alg, 1, 0, alg.basis(1)) == alg.zero()
    with pytest.raises(ValueError):
        fundamental_solution(PiecewiseConstantControl.constant((1, 0, 0)), alg)
    with pytest.raises(ValueError):
        fundamental_solution(u, alg).at(2)


def test_nilpotent_exp_of_shift():
    m = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    assert nilpotent_exp(m, 2, 3) == [[1, 2, 2], [0, 1, 2], [0, 0, 1]]


# ---------------------------------------------------------------- singularity

def test_zero_control_is_singular_with_image_g1():
    for alg in [catalog.engel(), catalog.heisenberg(2).algebra, catalog.upper_triangular(4)]:
        u = PiecewiseConstantControl.constant([0] * alg.rank)
        res = is_singular(u, alg)
        assert res and res.image.span.dim == alg.rank
        assert not any(res.witness[:alg.rank])


def test_heisenberg_constant_control_is_regular():
    alg = catalog.heisenberg(1).algebra
    assert not is_singular(PiecewiseConstantControl.constant((1, 1)), alg)


def test_engel_abnormal_line():
    alg = catalog.engel()
    res = is_singular(PiecewiseConstantControl.uniform([(0, 1), (0, -3)]), alg)
    assert res and res.witness == F(0, 0, 0, 1)


@given(seed=seeds)
def test_witness_annihilates_image(seed):
    alg = build_filiform(FiliformSpec("I", 5))
    u = control_for(alg, seed, zero_prob=0.5)
    res = is_singular(u, alg)
    img = image_span(u, alg)
    assert res.image.span == img.span
    if res:
        lam = res.witness
        assert next(c for c in reversed(lam) if c) == 1
        assert all(not sum(a * b for a, b in zip(lam, g)) for g in img.generators)
    else:
        assert img.is_full


@given(seed=seeds, frac=st.fractions(0, 1).filter(lambda x: 0 < x < 1))
def test_reparametrizations_preserve_endpoint_and_verdict(seed, frac):
    alg = catalog.free_step3_rank2()
    u = control_for(alg, seed)
    v = u.split(0, frac)
    assert flow_endpoint(u, alg) == flow_endpoint(v, alg)
    assert bool(is_singular(u, alg)) == bool(is_singular(v, alg))


def test_image_generators_are_taylor_vectors():
    alg = catalog.heisenberg(1).algebra
    img = image_span(PiecewiseConstantControl.constant((1, 0)), alg)
    assert linalg.rank(img.generators) == 3
